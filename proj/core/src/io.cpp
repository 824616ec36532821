#include "minkprobe/io.hpp"

#include <fstream>
#include <sstream>

#include "minkprobe/errors.hpp"
#include "minkprobe/shapes.hpp"

namespace minkprobe {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedInput, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

int read_dim(const json& j) {
  const json& d = field(j, "dim");
  if (!d.is_number_integer()) malformed("'dim' must be an integer");
  const int dim = d.get<int>();
  if (dim != 2 && dim != 3) malformed("'dim' must be 2 or 3");
  return dim;
}

Vec read_vec(const json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) malformed("expected a vector of length " + std::to_string(dim));
  Vec v = Vec::Zero();
  for (int k = 0; k < dim; ++k) {
    if (!j[k].is_number()) malformed("vector entries must be numbers");
    v(k) = j[k].get<double>();
  }
  if (!v.allFinite()) malformed("non-finite coordinate");
  return v;
}

json write_vec(const Vec& v, int dim) {
  json a = json::array();
  for (int k = 0; k < dim; ++k) a.push_back(v(k));
  return a;
}

}  // namespace

json polytope_to_json(const Polytope& body) {
  json j;
  j["dim"] = body.dim();
  json verts = json::array();
  for (const auto& v : body.vertices()) verts.push_back(write_vec(v, body.dim()));
  j["vertices"] = std::move(verts);
  if (body.dim() == 3) j["facets"] = body.facets();
  return j;
}

Polytope polytope_from_json(const json& j) {
  const int dim = read_dim(j);
  const json& vj = field(j, "vertices");
  if (!vj.is_array()) malformed("'vertices' must be an array");
  std::vector<Vec> verts;
  for (const auto& v : vj) verts.push_back(read_vec(v, dim));
  if (dim == 2) return Polytope::polygon(std::move(verts));
  const json& fj = field(j, "facets");
  if (!fj.is_array()) malformed("'facets' must be an array");
  std::vector<std::vector<int>> facets;
  for (const auto& f : fj) {
    if (!f.is_array()) malformed("each facet must be an array of vertex indices");
    std::vector<int> cyc;
    for (const auto& i : f) {
      if (!i.is_number_integer()) malformed("facet indices must be integers");
      cyc.push_back(i.get<int>());
    }
    facets.push_back(std::move(cyc));
  }
  return Polytope::polyhedron(std::move(verts), std::move(facets));
}

json halfspaces_to_json(const HalfspaceRep& rep) {
  json j;
  json normals = json::array();
  for (const auto& n : rep.normals) normals.push_back(write_vec(n, rep.dim));
  j["normals"] = std::move(normals);
  j["offsets"] = rep.offsets;
  return j;
}

HalfspaceRep halfspaces_from_json(const json& j) {
  const json& nj = field(j, "normals");
  const json& oj = field(j, "offsets");
  if (!nj.is_array() || !oj.is_array() || nj.empty()) malformed("'normals' and 'offsets' must be non-empty arrays");
  if (nj.size() != oj.size()) malformed("'normals' and 'offsets' differ in length");
  HalfspaceRep rep;
  rep.dim = nj[0].is_array() ? static_cast<int>(nj[0].size()) : 0;
  if (rep.dim != 2 && rep.dim != 3) malformed("normals must have length 2 or 3");
  for (std::size_t i = 0; i < nj.size(); ++i) {
    rep.normals.push_back(read_vec(nj[i], rep.dim));
    if (!oj[i].is_number()) malformed("offsets must be numbers");
    rep.offsets.push_back(oj[i].get<double>());
  }
  return rep;
}

json measure_to_json(const DiscreteSphericalMeasure& mu) {
  json j;
  j["dim"] = mu.dim();
  json atoms = json::array();
  for (const auto& a : mu.atoms()) atoms.push_back({{"n", write_vec(a.n, mu.dim())}, {"w", a.w}});
  j["atoms"] = std::move(atoms);
  return j;
}

DiscreteSphericalMeasure measure_from_json(const json& j) {
  if (j.is_object() && j.contains("normals") && !j.contains("atoms")) {
    int dim = 0;
    const auto normals = normals_from_json(j, dim);
    return empirical_measure(dim, normals);
  }
  const int dim = read_dim(j);
  const json& aj = field(j, "atoms");
  if (!aj.is_array()) malformed("'atoms' must be an array");
  std::vector<Atom> atoms;
  for (const auto& a : aj) {
    const json& w = field(a, "w");
    if (!w.is_number()) malformed("atom weight must be a number");
    atoms.push_back({read_vec(field(a, "n"), dim), w.get<double>()});
  }
  return DiscreteSphericalMeasure(dim, std::move(atoms));
}

json normals_to_json(int dim, const std::vector<Vec>& normals) {
  json j;
  j["dim"] = dim;
  json list = json::array();
  for (const auto& n : normals) list.push_back(write_vec(n, dim));
  j["normals"] = std::move(list);
  return j;
}

std::vector<Vec> normals_from_json(const json& j, int& dim) {
  dim = read_dim(j);
  const json& nj = field(j, "normals");
  if (!nj.is_array()) malformed("'normals' must be an array");
  std::vector<Vec> out;
  for (const auto& n : nj) out.push_back(read_vec(n, dim));
  return out;
}

json report_to_json(const ReconstructionReport& report) {
  json j;
  j["body"] = polytope_to_json(report.body);
  j["residual"] = report.residual;
  j["iterations"] = report.iterations;
  j["converged"] = report.converged;
  return j;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    malformed("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path.string() + "'");
  out << text;
}

void write_json_file(const std::filesystem::path& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

Polytope load_body(const std::string& spec) {
  if (is_named_body(spec)) return named_body(spec);
  return polytope_from_json(read_json_file(spec));
}

json distance_report(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu, DistanceKind which) {
  json out = json::object();
  switch (which) {
    case DistanceKind::TotalVariation:
      out["d_tv"] = d_tv(mu, nu);
      break;
    case DistanceKind::BoundedLipschitz:
      out["d_bl"] = d_bl(mu, nu);
      break;
    case DistanceKind::Convex: {
      const DistanceSandwich s = d_c_sandwich(mu, nu);
      out["d_c"] = {{"lower", s.lower}, {"upper", s.upper}, {"witness", s.lower_witness.describe()}};
      break;
    }
  }
  return out;
}

}  // namespace minkprobe
