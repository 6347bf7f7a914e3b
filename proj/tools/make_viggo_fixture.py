#!/usr/bin/env python3
# Copyright 2026 The M2T Toolkit Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes a small dialogue-act game corpus in the viggo CSV layout.

Usage: make_viggo_fixture.py [out_dir]
"""

import csv
import os
import random
import sys

GAMES = [
    # name, year, developer, genres, perspective, platforms, rating, esrb, mp, steam, linux, mac
    ("Hellblade: Senua's Sacrifice", 2017, "Ninja Theory", ["action-adventure", "hack-and-slash"], ["third person"], ["PC", "PlayStation"], "good", "M (for Mature)", "no", "yes", "no", "no"),
    ("Half-Life 2", 2004, "Valve Corporation", ["shooter"], ["first person"], ["PC", "Xbox"], "excellent", "M (for Mature)", "yes", "yes", "yes", "yes"),
    ("SpellForce 3", 2017, "Grimlore Games", ["real-time strategy", "role-playing"], ["bird view"], ["PC"], "poor", "T (for Teen)", "yes", "yes", "no", "no"),
    ("Little Big Adventure", 1994, "Adeline Software International", ["adventure", "puzzle"], ["bird view"], ["PlayStation", "PC"], "average", "E (for Everyone)", "no", "yes", "no", "yes"),
    ("Tony Hawk's Pro Skater 3", 2001, "Neversoft", ["sport"], ["third person"], ["PlayStation", "Xbox", "Nintendo"], "excellent", "T (for Teen)", "yes", "no", "no", "no"),
    ("Might & Magic: Heroes VI", 2011, "Black Hole Entertainment", ["role-playing", "strategy", "turn-based strategy"], ["bird view"], ["PC"], "average", "T (for Teen)", "yes", "yes", "no", "no"),
    ("Sid Meier's Civilization V", 2010, "Firaxis Games", ["strategy", "turn-based strategy"], ["bird view"], ["PC"], "good", "E 10+ (for Everyone 10 and Older)", "yes", "yes", "yes", "yes"),
    ("Portal 2", 2011, "Valve Corporation", ["platformer", "puzzle", "shooter"], ["first person"], ["PC", "PlayStation", "Xbox"], "excellent", "E 10+ (for Everyone 10 and Older)", "yes", "yes", "yes", "yes"),
    ("The Elder Scrolls V: Skyrim", 2011, "Bethesda Game Studios", ["role-playing", "action-adventure"], ["first person", "third person"], ["PC", "PlayStation", "Xbox"], "excellent", "M (for Mature)", "no", "yes", "no", "no"),
    ("Dead Space", 2008, "EA Redwood Shores", ["shooter", "survival horror"], ["third person"], ["PC", "PlayStation", "Xbox"], "good", "M (for Mature)", "no", "yes", "no", "no"),
    ("BioShock", 2007, "2K Boston", ["shooter", "action-adventure"], ["first person"], ["PC", "PlayStation", "Xbox"], "excellent", "M (for Mature)", "no", "yes", "no", "yes"),
    ("Madden NFL 15", 2014, "EA Tiburon", ["simulation", "sport"], ["third person"], ["PlayStation", "Xbox"], "average", "E (for Everyone)", "yes", "no", "no", "no"),
    ("Mirror's Edge", 2008, "EA DICE", ["action-adventure", "platformer"], ["first person"], ["PC", "PlayStation", "Xbox"], "good", "T (for Teen)", "no", "yes", "no", "no"),
    ("Crysis", 2007, "Crytek", ["shooter"], ["first person"], ["PC"], "good", "M (for Mature)", "yes", "yes", "no", "no"),
    ("Rayman Legends", 2013, "Ubisoft Montpellier", ["platformer"], ["side view"], ["PC", "PlayStation", "Xbox", "Nintendo"], "excellent", "E 10+ (for Everyone 10 and Older)", "yes", "yes", "no", "no"),
    ("Worms: Reloaded", 2010, "Team17", ["strategy", "turn-based strategy"], ["side view"], ["PC"], "average", "E 10+ (for Everyone 10 and Older)", "yes", "yes", "no", "yes"),
    ("Assassin's Creed Chronicles: India", 2016, "Climax Studios", ["action-adventure", "platformer"], ["side view"], ["PC", "PlayStation", "Xbox"], "poor", "T (for Teen)", "no", "yes", "no", "no"),
    ("Need for Speed: The Run", 2011, "EA Black Box", ["driving/racing"], ["third person"], ["PC", "PlayStation", "Xbox"], "poor", "T (for Teen)", "yes", "no", "no", "no"),
    ("F1 2014", 2014, "Codemasters", ["driving/racing", "simulation", "sport"], ["first person", "third person"], ["PC", "PlayStation", "Xbox"], "average", "E (for Everyone)", "yes", "yes", "no", "no"),
    ("The Sims 3", 2009, "The Sims Studio", ["simulation", "strategy"], ["bird view"], ["PC", "PlayStation", "Xbox"], "good", "T (for Teen)", "no", "yes", "no", "yes"),
    ("Guitar Hero: Smash Hits", 2009, "Beenox", ["music"], ["third person"], ["PlayStation", "Xbox"], "average", "T (for Teen)", "yes", "no", "no", "no"),
    ("Silent Hill: Origins", 2007, "Climax Studios", ["survival horror", "action-adventure"], ["third person"], ["PlayStation"], "good", "M (for Mature)", "no", "no", "no", "no"),
    ("World of Warcraft", 2004, "Blizzard Entertainment", ["MMORPG", "role-playing"], ["third person"], ["PC"], "excellent", "T (for Teen)", "yes", "no", "no", "yes"),
    ("Tomb Raider: The Last Revelation", 1999, "Core Design", ["action-adventure", "puzzle"], ["third person"], ["PC", "PlayStation"], "average", "T (for Teen)", "no", "yes", "no", "yes"),
    ("Lara Croft and the Guardian of Light", 2010, "Crystal Dynamics", ["action-adventure", "puzzle"], ["bird view"], ["PC", "PlayStation", "Xbox"], "good", "T (for Teen)", "yes", "yes", "no", "no"),
    ("Spider-Man: Edge of Time", 2011, "Beenox", ["action-adventure"], ["third person"], ["PlayStation", "Xbox", "Nintendo"], "poor", "T (for Teen)", "no", "no", "no", "no"),
    ("Super Bomberman", 1993, "Produce", ["strategy", "puzzle"], ["bird view"], ["Nintendo"], "good", "E (for Everyone)", "yes", "no", "no", "no"),
    ("Dirt: Showdown", 2012, "Codemasters", ["driving/racing", "sport"], ["third person"], ["PC", "PlayStation", "Xbox"], "average", "T (for Teen)", "yes", "yes", "no", "no"),
    ("Max Payne 3", 2012, "Rockstar Studios", ["action-adventure", "shooter"], ["third person"], ["PC", "PlayStation", "Xbox"], "good", "M (for Mature)", "yes", "yes", "no", "yes"),
    ("Resident Evil 4", 2005, "Capcom", ["shooter", "survival horror"], ["third person"], ["PlayStation", "Nintendo", "PC"], "excellent", "M (for Mature)", "no", "yes", "no", "no"),
]

RATING_WORDS = {
    "excellent": ["excellent", "fantastic", "one of the best"],
    "good": ["pretty good", "good", "fun"],
    "average": ["average", "not that fond of", "okay"],
    "poor": ["one of the worst", "poor", "pretty bad"],
}

PERSPECTIVE = {"bird view": "bird's eye view", "first person": "first-person",
               "third person": "third-person", "side view": "side view"}


def lst(v):
    return ", ".join(v)


def words(v):
    return v[0] if len(v) == 1 else ", ".join(v[:-1]) + " and " + v[-1]


def g(row):
    keys = ["name", "year", "dev", "genres", "persp", "plat", "rating", "esrb",
            "mp", "steam", "linux", "mac"]
    return dict(zip(keys, row))


def inform(x, r):
    variant = r.randrange(3)
    if variant == 0:
        mr = (f"inform(name[{x['name']}], release_year[{x['year']}], developer[{x['dev']}], "
              f"genres[{lst(x['genres'])}])")
        ref = (f"{x['name']} is a {words(x['genres'])} game that {x['dev']} "
               f"released in {x['year']}.")
    elif variant == 1:
        mr = (f"inform(name[{x['name']}], genres[{lst(x['genres'])}], "
              f"player_perspective[{lst(x['persp'])}], platforms[{lst(x['plat'])}])")
        ref = (f"{x['name']} is a {words([PERSPECTIVE[p] for p in x['persp']])} "
               f"{words(x['genres'])} game for {words(x['plat'])}.")
    else:
        mr = (f"inform(name[{x['name']}], esrb[{x['esrb']}], rating[{x['rating']}], "
              f"has_multiplayer[{x['mp']}])")
        mp = "has multiplayer" if x["mp"] == "yes" else "is single-player only"
        ref = (f"{x['name']} is rated {x['esrb']}, {mp}, and players found it "
               f"{r.choice(RATING_WORDS[x['rating']])}.")
    return mr, ref


def confirm(x, r):
    if r.randrange(2) == 0:
        mr = (f"confirm(name[{x['name']}], release_year[{x['year']}], developer[{x['dev']}])")
        ref = f"Oh, do you mean the {x['year']} game from {x['dev']}, {x['name']}?"
    else:
        mr = (f"confirm(name[{x['name']}], release_year[{x['year']}], genres[{x['genres'][0]}])")
        ref = (f"So you're referring to the {x['name']} {x['genres'][0]} game, "
               f"which was released in {x['year']}?")
    return mr, ref


def give_opinion(x, r):
    word = r.choice(RATING_WORDS[x["rating"]])
    if r.randrange(2) == 0:
        mr = (f"give_opinion(name[{x['name']}], rating[{x['rating']}], "
              f"genres[{lst(x['genres'])}])")
        ref = f"I think that {x['name']} is {word}, as far as {words(x['genres'])} games go."
    else:
        mr = (f"give_opinion(name[{x['name']}], rating[{x['rating']}], "
              f"player_perspective[{lst(x['persp'])}])")
        ref = (f"I think that {x['name']} is {word}, and the "
               f"{words([PERSPECTIVE[p] for p in x['persp']])} perspective is a big part of that.")
    return mr, ref


def recommend(x, r):
    if r.randrange(2) == 0:
        mr = f"recommend(name[{x['name']}], genres[{lst(x['genres'])}], platforms[{lst(x['plat'])}])"
        ref = (f"Since you like {words(x['genres'])} games, you should try {x['name']}. "
               f"It is on {words(x['plat'])}.")
    else:
        mr = f"recommend(name[{x['name']}], has_multiplayer[{x['mp']}], developer[{x['dev']}])"
        mp = "with multiplayer" if x["mp"] == "yes" else "for single player"
        ref = f"If you like {x['dev']} games, I would recommend {x['name']}, which is made {mp}."
    return mr, ref


def request(x, r):
    spec = r.choice(["interesting", "underrated", "fun", "frustrating", "memorable"])
    if r.randrange(2) == 0:
        mr = f"request(release_year[{x['year']}], specifier[{spec}])"
        ref = f"What is the most {spec} game you played that came out in {x['year']}?"
    else:
        mr = f"request(genres[{x['genres'][0]}], specifier[{spec}])"
        ref = f"Which {x['genres'][0]} game do you think is the most {spec}?"
    return mr, ref


ASK = {
    "has_multiplayer": ["Do you prefer playing games with other people or alone?",
                        "Do you like multiplayer games?",
                        "Are you more into single-player or multiplayer games?",
                        "Do you enjoy playing games with friends?",
                        "Is multiplayer something you look for in a game?"],
    "player_perspective": ["What perspective do you prefer in the games you play?",
                           "Do you like first-person or third-person games better?",
                           "Which camera perspective do you enjoy most?",
                           "Is there a player perspective you find most immersive?",
                           "Do you care about the perspective a game is played from?"],
    "genres": ["What kinds of games do you like to play?",
               "What is your favorite game genre?",
               "Which genres do you usually go for?",
               "Is there a genre of games you enjoy the most?",
               "What type of games are you into?"],
    "platforms": ["What platforms do you usually play games on?",
                  "Do you play more on PC or on a console?",
                  "Which gaming platform do you prefer?",
                  "What do you mostly play your games on?",
                  "Is there a platform you like best for gaming?"],
    "release_year": ["Do you prefer older games or new releases?",
                     "Are you into retro games at all?",
                     "Do you mostly play recent games?",
                     "How old are the games you usually play?",
                     "Do you like classic games from the nineties?"],
    "esrb": ["Do you play many games rated M (for Mature)?",
             "Does a game's ESRB rating matter to you?",
             "Do you pay attention to age ratings on games?",
             "Are you fine with games rated for mature audiences?",
             "Do you mostly play games rated E (for Everyone)?"],
    "available_on_steam": ["Do you buy most of your games on Steam?",
                           "Is Steam your go-to store for games?",
                           "Do you use Steam much?",
                           "Do you like getting games through Steam?",
                           "Is availability on Steam important to you?"],
    "has_linux_release": ["Do you play games on Linux?",
                          "Is Linux support important to you in a game?",
                          "Do you game on Linux at all?",
                          "Do you need games to run on Linux?",
                          "Have you played many games on Linux?"],
}


def request_attribute(x, r):
    attr = r.choice(sorted(ASK))
    return f"request_attribute({attr}[])", r.choice(ASK[attr])


def request_explanation(x, r):
    word = r.choice(RATING_WORDS[x["rating"]])
    if r.randrange(2) == 0:
        mr = f"request_explanation(rating[{x['rating']}], genres[{x['genres'][0]}])"
        ref = f"What is it about {x['genres'][0]} games that you find {word}?"
    else:
        mr = f"request_explanation(rating[{x['rating']}], player_perspective[{x['persp'][0]}])"
        ref = (f"Why do you find {PERSPECTIVE[x['persp'][0]]} games {word}?")
    return mr, ref


def suggest(x, r):
    if r.randrange(2) == 0:
        mr = (f"suggest(name[{x['name']}], genres[{x['genres'][0]}], "
              f"player_perspective[{x['persp'][0]}])")
        ref = (f"Do you also enjoy playing {PERSPECTIVE[x['persp'][0]]} {x['genres'][0]} games, "
               f"such as {x['name']}?")
    else:
        mr = f"suggest(name[{x['name']}], platforms[{x['plat'][0]}])"
        ref = f"Have you played {x['name']} on the {x['plat'][0]}?"
    return mr, ref


def verify_attribute(x, r):
    word = r.choice(RATING_WORDS[x["rating"]])
    if r.randrange(2) == 0:
        mr = (f"verify_attribute(name[{x['name']}], rating[{x['rating']}], "
              f"has_multiplayer[{x['mp']}], platforms[{x['plat'][0]}])")
        mode = "multiplayer" if x["mp"] == "yes" else "single-player"
        ref = (f"I recall that you found {x['name']} {word}. Do you enjoy {mode} "
               f"gaming on the {x['plat'][0]}?")
    else:
        mr = (f"verify_attribute(name[{x['name']}], rating[{x['rating']}], "
              f"genres[{x['genres'][0]}])")
        ref = (f"You said {x['name']} was {word}. Do you generally like "
               f"{x['genres'][0]} games?")
    return mr, ref


DAS = [confirm, give_opinion, inform, recommend, request, request_attribute,
       request_explanation, suggest, verify_attribute]

SEEDED = [
    ("confirm(name[Hellblade: Senua's Sacrifice], release_year[2017], developer[Ninja Theory])",
     "Oh, do you mean the 2017 game from Ninja Theory, Hellblade: Senua's Sacrifice?"),
    ("suggest(name[Half-Life 2], genres[shooter], player_perspective[first person])",
     "Do you also enjoy playing first-person shooters, such as Half-Life 2?"),
    ("give_opinion(name[SpellForce 3], rating[poor], genres[real-time strategy, role-playing], "
     "player_perspective[bird view])",
     "I think that SpellForce 3 is one of the worst games I've ever played. Trying to combine the "
     "real-time strategy and role-playing genres just doesn't work, and the bird's eye view makes "
     "it near impossible to play."),
    ("verify_attribute(name[Little Big Adventure], rating[average], has_multiplayer[no], "
     "platforms[PlayStation])",
     "I recall that you were not that fond of Little Big Adventure. Does single-player gaming on "
     "the PlayStation quickly get boring for you?"),
    ("confirm(name[Tony Hawk's Pro Skater 3], release_year[2001], genres[sport])",
     "Gotcha! So you're referring to the Tony Hawk's Pro Skater 3 sports game, which was "
     "released in 2001?"),
]


def build(split, per_da, rng, seen):
    rows = []
    for fn in DAS:
        made = 0
        attempts = 0
        while made < per_da:
            attempts += 1
            if attempts > 2000:
                raise SystemExit(f"cannot fill {fn.__name__} for {split}")
            x = g(rng.choice(GAMES))
            mr, ref = fn(x, rng)
            if (mr, ref) in seen:
                continue
            seen.add((mr, ref))
            rows.append((mr, ref))
            made += 1
    return rows


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
        os.path.dirname(__file__), "..", "data", "viggo")
    os.makedirs(out, exist_ok=True)
    rng = random.Random(20220607)
    seen = set(SEEDED)
    splits = {
        "train": list(SEEDED) + build("train", 20, rng, seen),
        "valid": build("valid", 4, rng, seen),
        "test": build("test", 12, rng, seen),
    }
    for split, rows in splits.items():
        with open(os.path.join(out, f"viggo-{split}.csv"), "w", newline="", encoding="utf-8") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(["mr", "ref"])
            w.writerows(rows)
        print(f"{split}: {len(rows)}")


if __name__ == "__main__":
    main()
