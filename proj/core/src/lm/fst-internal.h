// lm/fst-internal.h

// Copyright 2026  The arsg Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef ARSG_LM_FST_INTERNAL_H_
#define ARSG_LM_FST_INTERNAL_H_

#include <map>

#include "arsg/lm/wfst.h"

namespace arsg {
namespace internal {

// Log-semiring distances from a weighted set of source states.
std::map<int, double> Closure(const Wfst& fst,
                              const std::map<int, double>& init,
                              bool epsilon_only, double delta);

}  // namespace internal
}  // namespace arsg

#endif  // ARSG_LM_FST_INTERNAL_H_
