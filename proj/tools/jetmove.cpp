// jetmove: synthesize and check automorphisms of the torus and the sphere
// that move curvilinear jets; classify weighted blow-up surfaces.
//
// Exit codes: 0 ok, 1 negative verdict, 2 invalid input, 3 internal
// verification failure, 4 outside the classification hypothesis.

#include <CLI11.hpp>

#include <iostream>

#include "jetmove/errors.hpp"
#include "jetmove/json_io.hpp"
#include "jetmove/transitivity.hpp"

using namespace jetmove;

namespace {

enum Exit { kOk = 0, kNegative = 1, kInvalid = 2, kInternal = 3, kOutOfHypothesis = 4 };

std::vector<int> orders_of(const std::vector<Jet>& js) {
  std::vector<int> o;
  for (const auto& j : js) o.push_back(j.order());
  return o;
}

std::vector<Jet> concat(std::vector<Jet> a, const std::vector<Jet>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

struct Pairs {
  std::vector<Jet> sources, targets;
};

// Source/target pairs a job asks for; explicit sources override.
Pairs job_pairs(const JobFile& job, const std::vector<Jet>* sources) {
  Pairs p;
  p.targets = concat(job.pinned, job.jets);
  if (sources) p.sources = *sources;
  else if (job.from) p.sources = concat(job.pinned, *job.from);
  else p.sources = standard_config(job.surface, orders_of(p.targets)).jets;
  return p;
}

// First difference between two jets, empty if equal.
std::string jet_difference(const Jet& got, const Jet& want) {
  if (got == want) return {};
  if (!(got.center() == want.center())) return "center " + got.str() + " vs expected " + want.str();
  if (got.surface() == Surface::Torus) {
    const auto &a = got.torus(), &b = want.torus();
    if (!(a.chart == b.chart)) return "chart differs: " + got.str() + " vs expected " + want.str();
    for (int k = 0; k < a.order(); ++k)
      if (a.f[k] != b.f[k])
        return "coefficient " + std::to_string(k) + " of f: " + a.f[k].str() + " vs expected " + b.f[k].str();
  } else {
    const auto &a = got.sphere(), &b = want.sphere();
    if (a.var != b.var) return "graph variable differs: " + got.str() + " vs expected " + want.str();
    for (int k = 0; k < a.order(); ++k) {
      if (a.g[k] != b.g[k])
        return "coefficient " + std::to_string(k) + " of g: " + a.g[k].str() + " vs expected " + b.g[k].str();
      if (a.h[k] != b.h[k])
        return "coefficient " + std::to_string(k) + " of h: " + a.h[k].str() + " vs expected " + b.h[k].str();
    }
  }
  return "jets differ: " + got.str() + " vs expected " + want.str();
}

// Empty string when every source maps to its target.
std::string check_pairs(const AutWord& w, const Pairs& p) {
  if (p.sources.size() != p.targets.size()) return "source and target counts differ";
  for (std::size_t i = 0; i < p.sources.size(); ++i) {
    if (p.sources[i].order() != p.targets[i].order()) return "jet " + std::to_string(i) + ": orders differ";
    const std::string d = jet_difference(apply_jet(w, p.sources[i]), p.targets[i]);
    if (!d.empty()) return "jet " + std::to_string(i) + ": " + d;
  }
  return {};
}

int max_degree(const AutWord& w) {
  int d = 0;
  for (const auto& g : w.gens) {
    if (auto* t = std::get_if<TorusTwist>(&g)) d = std::max(d, t->q.degree());
    if (auto* s = std::get_if<SphereTwist>(&g)) d = std::max(d, s->r.degree());
  }
  return d;
}

bool is_input_error(Errc c) {
  switch (c) {
    case Errc::Internal:
    case Errc::EnumerationExhausted:
      return false;
    default:
      return true;
  }
}

int cmd_synth(const std::string& job_path, const std::string& out_path) {
  const JobFile job = job_from_json(read_json_file(job_path));
  AutWord w = job.from ? synth_pair(*job.from, job.jets, job.pinned) : synth(concat(job.pinned, job.jets));
  w.surface = job.surface;
  const std::string err = check_pairs(w, job_pairs(job, nullptr));
  if (!err.empty()) {
    std::cerr << "internal verification failed: " << err << "\n";
    return kInternal;
  }
  write_json_file(out_path, to_json(w));
  std::cout << "wrote " << out_path << ": " << w.gens.size() << " generators, max degree " << max_degree(w) << "\n";
  return kOk;
}

int cmd_verify(const std::string& word_path, const std::string& from_path, const std::string& to_path) {
  const AutWord w = word_from_json(read_json_file(word_path));
  const JobFile to = job_from_json(read_json_file(to_path));
  std::optional<std::vector<Jet>> sources;
  if (!from_path.empty()) {
    const JobFile from = job_from_json(read_json_file(from_path));
    sources = concat(from.pinned, from.jets);
  }
  if (w.surface != to.surface && !w.gens.empty()) throw Error(Errc::MixedSurfaces, "word and job surfaces differ");
  AutWord wv = w;
  wv.surface = to.surface;
  const std::string err = check_pairs(wv, job_pairs(to, sources ? &*sources : nullptr));
  if (!err.empty()) {
    std::cout << "mismatch: " << err << "\n";
    return kNegative;
  }
  std::cout << "verified: " << w.gens.size() << " certified generators map every source jet to its target\n";
  return kOk;
}

int cmd_apply(const std::string& word_path, const std::string& jet_path) {
  const AutWord w = word_from_json(read_json_file(word_path));
  const json in = read_json_file(jet_path);
  if (in.is_array()) {
    json out = json::array();
    for (const auto& j : in) out.push_back(to_json(apply_jet(w, jet_from_json(j))));
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << to_json(apply_jet(w, jet_from_json(in))).dump(2) << "\n";
  }
  return kOk;
}

int cmd_classify(const std::string& a_path, const std::string& b_path) {
  const SurfaceDescriptor a = descriptor_from_json(read_json_file(a_path));
  const SurfaceDescriptor b = descriptor_from_json(read_json_file(b_path));
  forest_build(a);
  forest_build(b);
  const Verdict v = isomorphism_decide(a, b);
  std::cout << verdict_name(v) << "\n";
  std::cout << "A: " << descriptor_invariants(a).str() << "\n";
  std::cout << "B: " << descriptor_invariants(b).str() << "\n";
  switch (v) {
    case Verdict::Isomorphic: return kOk;
    case Verdict::NotIsomorphic: return kNegative;
    case Verdict::HypothesisNotMet: return kOutOfHypothesis;
  }
  return kInternal;
}

int cmd_compose(const std::string& w1_path, const std::string& w2_path, const std::string& out_path) {
  const AutWord w = word_compose(word_from_json(read_json_file(w1_path)), word_from_json(read_json_file(w2_path)));
  write_json_file(out_path, to_json(w));
  std::cout << "wrote " << out_path << ": " << w.gens.size() << " generators\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"jetmove: exact automorphisms moving curvilinear jets on the torus and the sphere"};
  app.require_subcommand(1);

  std::string job, out, word, from, to, jet, a, b;
  auto* synth_cmd = app.add_subcommand("synth", "synthesize a word for a job file");
  synth_cmd->add_option("--job", job, "job JSON")->required();
  synth_cmd->add_option("--out", out, "output word JSON")->required();

  auto* verify_cmd = app.add_subcommand("verify", "check a word against source and target jets");
  verify_cmd->add_option("--word", word, "word JSON")->required();
  verify_cmd->add_option("--from", from, "source job JSON (default: standard configuration)");
  verify_cmd->add_option("--to", to, "target job JSON")->required();

  auto* apply_cmd = app.add_subcommand("apply", "apply a word to a jet (or an array of jets)");
  apply_cmd->add_option("--word", word, "word JSON")->required();
  apply_cmd->add_option("--jet", jet, "jet JSON")->required();

  auto* classify_cmd = app.add_subcommand("classify", "decide isomorphism of two surface descriptors");
  classify_cmd->add_option("A", a, "descriptor JSON")->required();
  classify_cmd->add_option("B", b, "descriptor JSON")->required();

  auto* compose_cmd = app.add_subcommand("compose", "first W1 then W2");
  compose_cmd->add_option("W1", a, "word JSON")->required();
  compose_cmd->add_option("W2", b, "word JSON")->required();
  compose_cmd->add_option("--out", out, "output word JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  try {
    if (*synth_cmd) return cmd_synth(job, out);
    if (*verify_cmd) return cmd_verify(word, from, to);
    if (*apply_cmd) return cmd_apply(word, jet);
    if (*classify_cmd) return cmd_classify(a, b);
    if (*compose_cmd) return cmd_compose(a, b, out);
  } catch (const Error& e) {
    if (e.code() == Errc::NotDistant) std::cerr << "error: not mutually distant (" << e.what() << ")\n";
    else std::cerr << "error: " << e.what() << "\n";
    return is_input_error(e.code()) ? kInvalid : kInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kInvalid;
}
