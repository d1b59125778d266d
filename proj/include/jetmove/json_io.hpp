#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "jetmove/automorphisms.hpp"
#include "jetmove/dantesque.hpp"

namespace jetmove {

using json = nlohmann::json;

json to_json(const Scalar& s);
json to_json(const Poly& p);
json to_json(const Series& s);
json to_json(const Jet& j);
json to_json(const SturmCertificate& c);
json to_json(const Generator& g);
json to_json(const AutWord& w);
json to_json(const SurfaceDescriptor& d);
json to_json(const HomeoInvariants& h);

// All readers throw Error(ParseError) on malformed input.
Scalar scalar_from_json(const json& j);
Poly poly_from_json(const json& j);
Series series_from_json(const json& j);
/// Validates and canonicalizes.
Jet jet_from_json(const json& j);
/// Re-certifies every generator (certification errors propagate unchanged).
AutWord word_from_json(const json& j);
SurfaceDescriptor descriptor_from_json(const json& j);

/// Synthesis request. Without `from` the word sends the standard
/// configuration (pinned first, then jets) to (pinned, jets); with `from`
/// it sends from[i] to jets[i] fixing every pinned jet.
struct JobFile {
  Surface surface = Surface::Torus;
  std::vector<int> partition;
  std::vector<Jet> jets;
  std::vector<Jet> pinned;
  std::optional<std::vector<Jet>> from;
};
JobFile job_from_json(const json& j);
json to_json(const JobFile& job);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace jetmove
