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

#ifndef M2T_VIGGO_REALIZER_H_
#define M2T_VIGGO_REALIZER_H_

#include <string>

#include "m2t/mr.h"

namespace m2t {

// Canonical slot-faithful sentence for a dialogue-act MR: every value occurs
// verbatim, questions appear only for acts that call for one, and confirm
// uses a "do you mean" frame. Deterministic; used by the mock backend.
std::string realize_viggo(const ViggoMr &mr);

}  // namespace m2t

#endif  // M2T_VIGGO_REALIZER_H_
