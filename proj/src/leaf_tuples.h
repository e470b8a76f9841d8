// Copyright 2026 The Xplain Authors.
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

#ifndef XPLAIN_SRC_LEAF_TUPLES_H_
#define XPLAIN_SRC_LEAF_TUPLES_H_

#include <cstdint>
#include <vector>

#include "xplain/config.h"
#include "xplain/model.h"
#include "xplain/tree_explain.h"

namespace xplain::internal {

// Merged assignment of one matching leaf tuple: -1 free, else the bit.
using MergedAssignment = std::vector<int8_t>;

// Enumerates tuples of one leaf per tree whose paths pairwise match and whose
// votes produce `target`. Trees are visited in index order and leaves in
// leaf-id order; the output keeps that order regardless of thread count.
// With `first_only` the search stops after any hit (result size <= 1).
std::vector<MergedAssignment> MatchingLeafTuples(const Ensemble& ensemble,
                                                 bool target, bool first_only,
                                                 const Limits& limits);

}  // namespace xplain::internal

#endif  // XPLAIN_SRC_LEAF_TUPLES_H_
