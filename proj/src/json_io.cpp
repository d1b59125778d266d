#include "jetmove/json_io.hpp"

#include <fstream>
#include <sstream>

#include "jetmove/errors.hpp"

namespace jetmove {

namespace {

const char* kAxis[] = {"x", "y", "z"};

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) bad(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

std::string string_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) bad(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

int axis_index(const std::string& s, int count) {
  for (int i = 0; i < count; ++i)
    if (s == kAxis[i]) return i;
  bad("unknown axis \"" + s + "\"");
}

Surface surface_from(const std::string& s) {
  if (s == "torus") return Surface::Torus;
  if (s == "sphere") return Surface::Sphere;
  bad("unknown surface \"" + s + "\"");
}

std::vector<Scalar> scalars(const json& j) {
  if (!j.is_array()) bad("expected an array of scalars");
  std::vector<Scalar> out;
  for (const auto& v : j) out.push_back(scalar_from_json(v));
  return out;
}

json proj_to_json(const ProjPoint& p) { return p.is_infinite() ? json("inf") : to_json(p.u); }

ProjPoint proj_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return ProjPoint::infinity();
  if (j.is_array()) {
    if (j.size() != 2) bad("homogeneous coordinates need two entries");
    return ProjPoint::make(scalar_from_json(j[0]), scalar_from_json(j[1]));
  }
  return ProjPoint::finite(scalar_from_json(j));
}

Series graph_series(const json& j, const Scalar& center, int order) {
  auto c = scalars(j);
  if (static_cast<int>(c.size()) > order) bad("graph has more coefficients than the jet order");
  return Series(center, order, std::move(c));
}

json matrix_to_json(const std::array<Scalar, 4>& m) {
  return json::array({json::array({to_json(m[0]), to_json(m[1])}), json::array({to_json(m[2]), to_json(m[3])})});
}

std::array<Scalar, 4> matrix_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 || !j[1].is_array() || j[1].size() != 2)
    bad("Möbius matrix must be 2x2");
  return {scalar_from_json(j[0][0]), scalar_from_json(j[0][1]), scalar_from_json(j[1][0]), scalar_from_json(j[1][1])};
}

std::vector<Jet> jets_from(const json& j, const char* key) {
  const json& arr = field(j, key);
  if (!arr.is_array()) bad(std::string("field \"") + key + "\" must be an array of jets");
  std::vector<Jet> out;
  for (const auto& v : arr) out.push_back(jet_from_json(v));
  return out;
}

}  // namespace

json to_json(const Scalar& s) { return s.str(); }

json to_json(const Poly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_json(c));
  return a;
}

json to_json(const Series& s) {
  json a = json::array();
  for (const auto& c : s.coeffs()) a.push_back(to_json(c));
  return {{"center", to_json(s.center())}, {"order", s.order()}, {"coeffs", a}};
}

Scalar scalar_from_json(const json& j) {
  try {
    if (j.is_number_integer()) return Scalar(j.get<long>());
    if (j.is_string()) return Scalar::parse(j.get<std::string>());
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError) throw;
    bad(std::string("bad scalar: ") + e.what());
  }
  bad("scalars must be strings or integers (got " + j.dump() + ")");
}

Poly poly_from_json(const json& j) { return Poly(scalars(j)); }

Series series_from_json(const json& j) {
  const int order = int_field(j, "order");
  if (order < 1) bad("series order must be positive");
  return graph_series(field(j, "coeffs"), scalar_from_json(field(j, "center")), order);
}

json to_json(const Jet& jet) {
  json out;
  out["surface"] = surface_name(jet.surface());
  out["order"] = jet.order();
  auto coeffs = [](const Series& s) {
    json a = json::array();
    for (const auto& c : s.coeffs()) a.push_back(to_json(c));
    return a;
  };
  if (jet.surface() == Surface::Torus) {
    const auto& t = jet.torus();
    out["chart"] = {{"x", t.chart.x}, {"y", t.chart.y}, {"transposed", t.chart.transposed}};
    out["center"] = json::array({proj_to_json(t.center.x), proj_to_json(t.center.y)});
    out["graph"] = {{"f", coeffs(t.f)}};
  } else {
    const auto& s = jet.sphere();
    out["chart"] = kAxis[s.var];
    out["center"] = json::array({to_json(s.center.x), to_json(s.center.y), to_json(s.center.z)});
    out["graph"] = {{"g", coeffs(s.g)}, {"h", coeffs(s.h)}};
  }
  return out;
}

Jet jet_from_json(const json& j) {
  const Surface surf = surface_from(string_field(j, "surface"));
  const int order = int_field(j, "order");
  if (order < 1) bad("jet order must be positive");
  const json& center = field(j, "center");
  const json& graph = field(j, "graph");
  if (!center.is_array()) bad("jet center must be an array");
  try {
    if (surf == Surface::Torus) {
      if (center.size() != 2) bad("torus center needs two coordinates");
      TorusPoint c{proj_from_json(center[0]), proj_from_json(center[1])};
      TorusChart chart{c.x.is_infinite() ? 1 : 0, c.y.is_infinite() ? 1 : 0, false};
      if (j.contains("chart")) {
        const json& ch = j.at("chart");
        if (ch.contains("x")) chart.x = int_field(ch, "x");
        if (ch.contains("y")) chart.y = int_field(ch, "y");
        if (ch.contains("transposed")) {
          if (!ch.at("transposed").is_boolean()) bad("chart.transposed must be a boolean");
          chart.transposed = ch.at("transposed").get<bool>();
        }
      }
      if (chart.x < 0 || chart.x > 1 || chart.y < 0 || chart.y > 1) bad("chart indices must be 0 or 1");
      const ProjPoint& base = chart.transposed ? c.y : c.x;
      const int bc = chart.transposed ? chart.y : chart.x;
      Scalar s0;
      if (bc == 0) {
        if (base.is_infinite()) bad("center is not in the requested chart");
        s0 = base.u;
      } else {
        if (base.u.is_zero()) bad("center is not in the requested chart");
        s0 = base.v / base.u;
      }
      Jet jet = TorusJet{chart, c, graph_series(field(graph, "f"), s0, order)};
      jet_require_valid(jet);
      return jet_canonicalize(jet);
    }
    if (center.size() != 3) bad("sphere center needs three coordinates");
    const SpherePoint c = SpherePoint::make(scalar_from_json(center[0]), scalar_from_json(center[1]),
                                            scalar_from_json(center[2]));
    const int var = j.contains("chart") ? axis_index(string_field(j, "chart"), 3) : 0;
    Jet jet = SphereJet{var, c, graph_series(field(graph, "g"), c[var], order),
                        graph_series(field(graph, "h"), c[var], order)};
    jet_require_valid(jet);
    return jet_canonicalize(jet);
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError) throw;
    bad(std::string("invalid jet: ") + e.what());
  }
}

json to_json(const SturmCertificate& c) {
  return {{"region", c.whole_line ? "line" : "[-1,1]"},
          {"chain_length", c.chain_length},
          {"variations_lo", c.var_lo},
          {"variations_hi", c.var_hi},
          {"endpoint_roots", c.endpoint_roots},
          {"roots", c.roots}};
}

json to_json(const Generator& g) {
  json out;
  if (auto* t = std::get_if<TorusTwist>(&g)) {
    out = {{"type", "torus_twist"}, {"axis", kAxis[t->axis]}, {"p", to_json(t->p)}, {"q", to_json(t->q)},
           {"certificate", to_json(t->cert)}};
  } else if (auto* m = std::get_if<TorusMoebius>(&g)) {
    out = {{"type", "torus_moebius"}, {"x", matrix_to_json(m->mx)}, {"y", matrix_to_json(m->my)}};
  } else {
    const auto& s = std::get<SphereTwist>(g);
    out = {{"type", "sphere_twist"}, {"fixed", kAxis[s.fixed]}, {"p", to_json(s.p)}, {"q", to_json(s.q)},
           {"r", to_json(s.r)}, {"certificate", to_json(s.cert)}};
  }
  out["formula"] = generator_formula(g);
  return out;
}

json to_json(const AutWord& w) {
  json gens = json::array();
  for (const auto& g : w.gens) gens.push_back(to_json(g));
  return {{"surface", surface_name(w.surface)}, {"generators", gens}, {"formula", word_formula(w)}};
}

AutWord word_from_json(const json& j) {
  AutWord w{surface_from(string_field(j, "surface")), {}};
  const json& gens = field(j, "generators");
  if (!gens.is_array()) bad("generators must be an array");
  for (const auto& g : gens) {
    const std::string type = string_field(g, "type");
    if (type == "torus_twist") {
      w.gens.emplace_back(certify_twist(TorusTwist{axis_index(string_field(g, "axis"), 2),
                                                   poly_from_json(field(g, "p")), poly_from_json(field(g, "q")), {}}));
    } else if (type == "torus_moebius") {
      w.gens.emplace_back(certify_moebius(TorusMoebius{matrix_from_json(field(g, "x")), matrix_from_json(field(g, "y"))}));
    } else if (type == "sphere_twist") {
      w.gens.emplace_back(certify_twist(SphereTwist{axis_index(string_field(g, "fixed"), 3),
                                                    poly_from_json(field(g, "p")), poly_from_json(field(g, "q")),
                                                    poly_from_json(field(g, "r")), {}}));
    } else {
      bad("unknown generator type \"" + type + "\"");
    }
  }
  certify_word(w);
  return w;
}

json to_json(const SurfaceDescriptor& d) {
  json recs = json::array();
  for (const auto& r : d.records) {
    json rec = {{"parent", r.parent ? json(*r.parent) : json("base")}, {"order", r.order}};
    if (r.center) rec["center"] = to_json(*r.center);
    recs.push_back(rec);
  }
  return {{"base", base_name(d.base)}, {"records", recs}};
}

SurfaceDescriptor descriptor_from_json(const json& j) {
  SurfaceDescriptor d;
  const std::string base = string_field(j, "base");
  if (base == "sphere") d.base = Base::Sphere;
  else if (base == "torus") d.base = Base::Torus;
  else if (base == "klein") d.base = Base::Klein;
  else bad("unknown base \"" + base + "\"");
  const json& recs = j.contains("records") ? j.at("records") : json::array();
  if (!recs.is_array()) bad("records must be an array");
  for (const auto& r : recs) {
    BlowupRecord rec;
    rec.order = int_field(r, "order");
    if (rec.order < 1) bad("record order must be positive");
    if (r.contains("parent")) {
      const json& p = r.at("parent");
      if (p.is_number_integer()) rec.parent = p.get<int>();
      else if (!(p.is_string() && p.get<std::string>() == "base")) bad("record parent must be \"base\" or an index");
    }
    if (r.contains("center")) rec.center = jet_from_json(r.at("center"));
    d.records.push_back(std::move(rec));
  }
  return d;
}

json to_json(const HomeoInvariants& h) {
  json sing = json::array();
  for (int e : h.singularities) sing.push_back("A" + std::to_string(e - 1) + "-");
  return {{"euler", h.euler},
          {"resolution", {{"orientable", h.orientable}, {"genus", h.genus}}},
          {"singularities", sing}};
}

JobFile job_from_json(const json& j) {
  JobFile job;
  job.surface = surface_from(string_field(j, "surface"));
  const json& part = field(j, "partition");
  if (!part.is_array()) bad("partition must be an array of positive integers");
  for (const auto& e : part) {
    if (!e.is_number_integer() || e.get<int>() < 1) bad("partition parts must be positive integers");
    job.partition.push_back(e.get<int>());
  }
  job.jets = jets_from(j, "jets");
  if (j.contains("pinned")) job.pinned = jets_from(j, "pinned");
  if (j.contains("from")) job.from = jets_from(j, "from");
  if (job.partition.size() != job.jets.size()) bad("partition length differs from the number of jets");
  for (std::size_t i = 0; i < job.jets.size(); ++i)
    if (job.jets[i].order() != job.partition[i]) bad("jet " + std::to_string(i) + " does not match the partition");
  auto check_surface = [&](const std::vector<Jet>& js) {
    for (const auto& x : js)
      if (x.surface() != job.surface) bad("jet on a different surface than the job");
  };
  check_surface(job.jets);
  check_surface(job.pinned);
  if (job.from) check_surface(*job.from);
  return job;
}

json to_json(const JobFile& job) {
  auto arr = [](const std::vector<Jet>& js) {
    json a = json::array();
    for (const auto& x : js) a.push_back(to_json(x));
    return a;
  };
  json out = {{"surface", surface_name(job.surface)}, {"partition", job.partition}, {"jets", arr(job.jets)}};
  if (!job.pinned.empty()) out["pinned"] = arr(job.pinned);
  if (job.from) out["from"] = arr(*job.from);
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    bad(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::ParseError, "cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace jetmove
