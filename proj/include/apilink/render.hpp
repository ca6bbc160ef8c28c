#pragma once

#include <string>
#include <vector>

#include "apilink/context_sim.hpp"
#include "apilink/pipeline.hpp"
#include "apilink/text_prep.hpp"

namespace apilink {

// Line-delimited decision records behind a versioned header line. Confidences
// are printed with six decimals so reruns are byte-identical.
std::string render_records(const std::vector<ResolutionDecision>& decisions);

// Inverse of render_records; throws input_error on malformed input or an
// unsupported version.
std::vector<ResolutionDecision> parse_records(const std::string& text);

std::vector<ResolutionDecision> load_records(const std::string& path);

// Static report: the tokenized thread with true mentions highlighted green
// (hover tooltip with API name, description excerpt, and homepage link) and
// false mentions red. Byte-deterministic for fixed inputs.
std::string render_annotated_html(const ThreadDoc& doc,
                                  const std::vector<ResolutionDecision>& decisions,
                                  const ApiDatabase& db,
                                  const DescriptionCache& descs);

}  // namespace apilink
