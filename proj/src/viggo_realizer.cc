// Copyright 2026 The M2T Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "m2t/viggo_realizer.h"

#include "m2t/text.h"

namespace m2t {

namespace {

std::string list_phrase(const std::vector<std::string> &values) {
  if (values.empty()) return "";
  if (values.size() == 1) return values[0];
  std::vector<std::string> head(values.begin(), values.end() - 1);
  return join(head, ", ") + " and " + values.back();
}

bool is_no(const Slot &s) {
  return s.values.size() == 1 &&
         (to_lower_ascii(s.values[0]) == "no" || to_lower_ascii(s.values[0]) == "false");
}

std::string article(const std::string &word) {
  if (word.empty()) return "a";
  char c = static_cast<char>(std::tolower(static_cast<unsigned char>(word[0])));
  return (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') ? "an" : "a";
}

// Phrase asking about an attribute with no value.
std::string topic_of(const std::string &attr) {
  if (attr == "has_multiplayer") return "multiplayer games";
  if (attr == "available_on_steam") return "buying games on Steam";
  if (attr == "has_linux_release") return "playing games on Linux";
  if (attr == "has_mac_release") return "playing games on a Mac";
  if (attr == "genres") return "any particular genre";
  if (attr == "player_perspective") return "a particular player perspective";
  if (attr == "platforms") return "a particular platform";
  if (attr == "developer") return "games from a particular developer";
  if (attr == "release_year") return "older or more recent games";
  if (attr == "exp_release_date") return "games that have not come out yet";
  if (attr == "esrb") return "games with a particular ESRB rating";
  if (attr == "rating") return "game ratings";
  if (attr == "name") return "a particular game";
  if (attr == "specifier") return "your favorite games";
  std::string words = attr;
  for (char &c : words) {
    if (c == '_') c = ' ';
  }
  return "games with a particular " + words;
}

// Post-modifier carrying one filled slot, e.g. " released in 2019".
std::string modifier(const Slot &s) {
  const std::string &a = s.attribute;
  std::string v = list_phrase(s.values);
  if (a == "release_year") return " released in " + v;
  if (a == "exp_release_date") return " expected to come out " + v;
  if (a == "developer") return " by " + v;
  if (a == "esrb") return " rated " + v;
  if (a == "rating") return " with " + article(v) + " " + v + " rating";
  if (a == "player_perspective") return " played from " + article(v) + " " + v + " perspective";
  if (a == "platforms") return " on " + v;
  if (a == "has_multiplayer") return is_no(s) ? " that is single-player only" : " with multiplayer";
  if (a == "available_on_steam") return is_no(s) ? " not available on Steam" : " available on Steam";
  if (a == "has_linux_release") return is_no(s) ? " without a Linux release" : " with a Linux release";
  if (a == "has_mac_release") return is_no(s) ? " without a Mac release" : " with a Mac release";
  if (a == "specifier") return " that is " + v;
  std::string words = a;
  for (char &c : words) {
    if (c == '_') c = ' ';
  }
  return " with " + words + " " + v;
}

struct Parts {
  std::string name;     // empty when no name slot
  std::string genres;   // list phrase, empty when absent
  std::string mods;     // concatenated modifiers
  std::vector<const Slot *> empty;  // slots without values
};

Parts parts_of(const ViggoMr &mr) {
  Parts p;
  std::vector<std::string> mods;
  for (const Slot &s : mr.slots) {
    if (s.values.empty()) {
      p.empty.push_back(&s);
    } else if (s.attribute == "name") {
      p.name = list_phrase(s.values);
    } else if (s.attribute == "genres") {
      p.genres = list_phrase(s.values);
    } else {
      mods.push_back(modifier(s));
    }
  }
  for (size_t i = 0; i < mods.size(); ++i) {
    p.mods += (i == 0 ? "" : ",") + mods[i];
  }
  return p;
}

// "a shooter game released in 2019, by Remedy"
std::string game_np(const Parts &p) {
  std::string head = p.genres.empty() ? "game" : p.genres + " game";
  return article(head) + " " + head + p.mods;
}

std::string empty_topics(const Parts &p) {
  std::vector<std::string> t;
  for (const Slot *s : p.empty) t.push_back(topic_of(s->attribute));
  return list_phrase(t);
}

}  // namespace

std::string realize_viggo(const ViggoMr &mr) {
  Parts p = parts_of(mr);
  const std::string &da = mr.dialogue_act;
  std::string subject = p.name.empty() ? "It" : p.name;
  std::string extra;
  if (!p.empty.empty()) {
    extra = " I also wonder about " + empty_topics(p) + ".";
  }
  bool has_content = !p.name.empty() || !p.genres.empty() || !p.mods.empty();

  if (da == "confirm") {
    std::string np = p.name.empty() ? game_np(p) : p.name + ", " + game_np(p);
    std::string q = "Do you mean " + np + "?";
    return p.empty.empty() ? q : "You seem curious about " + empty_topics(p) + ". " + q;
  }
  if (da == "suggest" || da == "request_attribute" || da == "verify_attribute" ||
      da == "request_explanation" || da == "request") {
    std::string lead;
    std::string question;
    if (da == "request_attribute") {
      if (has_content) lead = subject + " is " + game_np(p) + ". ";
      question = p.empty.empty() ? "Do you like games like that?"
                                 : "Do you like " + empty_topics(p) + "?";
      return lead + question;
    }
    if (!p.empty.empty()) lead = "Let's talk about " + empty_topics(p) + ". ";
    if (da == "suggest") {
      question = p.name.empty() ? "Have you played " + game_np(p) + "?"
                                : "Have you played " + p.name + ", " + game_np(p) + "?";
    } else if (da == "verify_attribute") {
      question = p.name.empty() ? "Do you still enjoy " + game_np(p) + "?"
                                : "I recall that you played " + p.name +
                                      ". Do you enjoy " + game_np(p) + "?";
    } else if (da == "request_explanation") {
      question = p.name.empty() ? "What is it that you like about " + game_np(p) + "?"
                                : "What is it that you like about " + p.name + ", " +
                                      game_np(p) + "?";
    } else {
      std::string head = p.genres.empty() ? "game" : p.genres + " game";
      question = p.name.empty() ? "Which " + head + p.mods + " would you pick?"
                                : "Would you pick " + p.name + ", " + game_np(p) + "?";
    }
    return lead + question;
  }
  // Declarative acts.
  std::string body = subject + " is " + game_np(p) + ".";
  if (da == "give_opinion") body = "I think that " + subject + " is " + game_np(p) + ".";
  if (da == "recommend") {
    body = "I would recommend " + (p.name.empty() ? game_np(p) : p.name + ", " + game_np(p)) + ".";
  }
  if (!has_content && p.empty.empty()) return "That is all I know.";
  if (!has_content) return "I know a little about " + empty_topics(p) + ".";
  return body + extra;
}

}  // namespace m2t
