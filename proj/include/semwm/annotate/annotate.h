// Copyright 2026 The semwm Authors.
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

#ifndef SEMWM_ANNOTATE_ANNOTATE_H_
#define SEMWM_ANNOTATE_ANNOTATE_H_

#include <string>
#include <utility>
#include <vector>

#include "semwm/core/image_store.h"
#include "semwm/core/types.h"
#include "semwm/gateway/gateway.h"
#include "semwm/overlay/overlay.h"

namespace semwm::annotate {

inline constexpr int kDescriptionsPerTransition = 3;
inline constexpr int kQaPerTransition = 8;

struct Annotator {
  gateway::ChatGateway& gateway;
  const ImageStore& images;
  overlay::OverlayStyle style{};
};

// Sends before, before+overlay and after images with the action annotation
// prompt and parses both descriptions from the reply. Non-spatial actions
// send the unmarked before image in the overlay slot.
std::pair<HighLevelAction, ChangeDescription> AnnotateActionAndChange(
    const Transition& t, const Annotator& a);

// n independent annotation calls; candidates indexed 0..n-1, none selected.
// Identical texts are kept as separate candidates.
std::vector<ChangeDescription> GenerateDescriptions(const Transition& t,
                                                    const Annotator& a,
                                                    int n = kDescriptionsPerTransition);

// QA candidates from the before/after pair. Requires exactly kQaPerTransition
// pairs; a reply with the wrong count or bad formatting is re-requested once.
// Ids are "<transition id>/qa<i>". If t has no high-level action one is
// annotated first.
std::vector<QAPair> GenerateQaCandidates(const Transition& t,
                                         const Annotator& a);

struct AnnotationBatch {
  std::vector<Transition> transitions;  // high_action filled where missing
  std::vector<ChangeDescription> descriptions;
};

// Runs the action annotation and description generation for a batch under
// bounded parallelism. Outputs are sorted by transition id.
AnnotationBatch AnnotateTransitions(const std::vector<Transition>& input,
                                    const Annotator& a, int n_descriptions,
                                    int concurrency);

// QA candidates for a batch, sorted by QA id.
std::vector<QAPair> GenerateQaBatch(const std::vector<Transition>& input,
                                    const Annotator& a, int concurrency);

}  // namespace semwm::annotate

#endif  // SEMWM_ANNOTATE_ANNOTATE_H_
