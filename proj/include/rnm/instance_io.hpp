#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "rnm/convex_body.hpp"
#include "rnm/helly.hpp"

namespace rnm {

using nlohmann::json;

/// Instance file violates the schema; `path` points at the offending field.
class SchemaError : public DomainError {
 public:
  SchemaError(std::string path, const std::string& what)
      : DomainError(what + " (at " + path + ")"), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class Field { real, complex_ };

inline Field parse_field_tag(const json& j) {
  if (!j.contains("field") || !j["field"].is_string()) {
    throw SchemaError("/field", "expected \"real\" or \"complex\"");
  }
  std::string f = j["field"].get<std::string>();
  if (f == "real") return Field::real;
  if (f == "complex") return Field::complex_;
  throw SchemaError("/field", "expected \"real\" or \"complex\"");
}

namespace io_detail {

inline double require_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  return j.get<double>();
}

template <scalar_field K>
inline K parse_scalar(const json& j, const std::string& path) {
  if constexpr (is_complex_v<K>) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
      throw SchemaError(path, "complex scalar must be a [re, im] pair");
    }
    return K(j[0].get<double>(), j[1].get<double>());
  } else {
    return require_number(j, path);
  }
}

template <scalar_field K>
inline json scalar_to_json(K v) {
  if constexpr (is_complex_v<K>) {
    return json::array({v.real(), v.imag()});
  } else {
    return json(v);
  }
}

template <scalar_field K>
inline std::vector<K> parse_coords(const json& j, std::size_t dim,
                                   const std::string& path) {
  if (!j.is_array() || j.size() != dim) {
    throw SchemaError(path, "expected an array of " + std::to_string(dim) + " coordinates");
  }
  std::vector<K> out(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    out[c] = parse_scalar<K>(j[c], path + "/" + std::to_string(c));
  }
  return out;
}

}  // namespace io_detail

inline SpacePtr parse_space(const json& j) {
  if (!j.contains("space") || !j["space"].is_object() ||
      !j["space"].contains("atoms") || !j["space"]["atoms"].is_array() ||
      j["space"]["atoms"].empty()) {
    throw SchemaError("/space/atoms", "expected a nonempty array of atoms");
  }
  std::vector<std::string> ids;
  std::vector<double> probs;
  const json& atoms = j["space"]["atoms"];
  double sum = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string path = "/space/atoms/" + std::to_string(i);
    if (!atoms[i].is_object() || !atoms[i].contains("id") ||
        !atoms[i]["id"].is_string() || !atoms[i].contains("prob")) {
      throw SchemaError(path, "atom must be {\"id\": string, \"prob\": number}");
    }
    double p = io_detail::require_number(atoms[i]["prob"], path + "/prob");
    if (!(p > 0.0)) throw SchemaError(path + "/prob", "prob must be > 0");
    ids.push_back(atoms[i]["id"].get<std::string>());
    probs.push_back(p);
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw SchemaError("/space/atoms", "probs must sum to 1 within 1e-9");
  }
  // canonicalize residual rounding onto the last atom
  if (sum != 1.0) {
    double partial = 0.0;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) partial += probs[i];
    probs.back() = 1.0 - partial;
    if (!(probs.back() > 0.0)) {
      throw SchemaError("/space/atoms", "probs must sum to 1 within 1e-9");
    }
  }
  try {
    return make_space(std::move(ids), std::move(probs));
  } catch (const DomainError& e) {
    throw SchemaError("/space/atoms", e.what());
  }
}

/// Typed contents of an instance file for one scalar field.
template <scalar_field K>
struct InstanceData {
  SpacePtr space;
  std::size_t dim = 0;
  std::vector<RandomFunctional<K>> functionals;
  std::vector<L0Scalar<K>> targets;
  std::optional<L0Scalar<double>> beta;
  std::optional<L0Scalar<double>> epsilon;
  std::optional<ConvexBody<K>> body_g;
  std::optional<ConvexBody<K>> body_m;
  std::optional<ConvexBody<K>> body_b;
  std::optional<RNElement<K>> point;
};

namespace io_detail {

template <scalar_field K>
inline RNElement<K> parse_element(const json& j, const SpacePtr& space,
                                  std::size_t dim, const std::string& path) {
  if (!j.is_array() || j.size() != space->size()) {
    throw SchemaError(path, "expected one coordinate array per atom");
  }
  std::vector<K> coords;
  coords.reserve(space->size() * dim);
  for (std::size_t a = 0; a < space->size(); ++a) {
    std::vector<K> v = parse_coords<K>(j[a], dim, path + "/" + std::to_string(a));
    coords.insert(coords.end(), v.begin(), v.end());
  }
  return RNElement<K>(space, dim, std::move(coords));
}

template <scalar_field K>
inline L0Scalar<K> parse_l0(const json& j, const SpacePtr& space,
                            const std::string& path) {
  if (!j.is_array() || j.size() != space->size()) {
    throw SchemaError(path, "expected one scalar per atom");
  }
  std::vector<K> vals(space->size());
  for (std::size_t a = 0; a < space->size(); ++a) {
    vals[a] = parse_scalar<K>(j[a], path + "/" + std::to_string(a));
  }
  return L0Scalar<K>(space, std::move(vals));
}

template <scalar_field K>
inline ConvexBody<K> parse_body(const json& j, const SpacePtr& space,
                                std::size_t dim, const std::string& path) {
  if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array() ||
      j["atoms"].size() != space->size()) {
    throw SchemaError(path + "/atoms", "expected one body description per atom");
  }
  bool interior = j.value("interior", false);
  std::vector<typename ConvexBody<K>::AtomDesc> descs;
  for (std::size_t a = 0; a < space->size(); ++a) {
    const json& ja = j["atoms"][a];
    const std::string pa = path + "/atoms/" + std::to_string(a);
    if (!ja.is_object() || !ja.contains("type") || !ja["type"].is_string()) {
      throw SchemaError(pa, "body atom must carry \"type\": \"ball\" or \"hull\"");
    }
    std::string type = ja["type"].get<std::string>();
    if (type == "ball") {
      if (!ja.contains("center") || !ja.contains("radius")) {
        throw SchemaError(pa, "ball needs center and radius");
      }
      typename ConvexBody<K>::Ball b;
      b.center = parse_coords<K>(ja["center"], dim, pa + "/center");
      b.radius = require_number(ja["radius"], pa + "/radius");
      if (b.radius < 0.0) throw SchemaError(pa + "/radius", "radius must be >= 0");
      descs.push_back(std::move(b));
    } else if (type == "hull") {
      if (!ja.contains("points") || !ja["points"].is_array() || ja["points"].empty()) {
        throw SchemaError(pa + "/points", "hull needs a nonempty point list");
      }
      typename ConvexBody<K>::Hull h;
      for (std::size_t p = 0; p < ja["points"].size(); ++p) {
        h.points.push_back(parse_coords<K>(ja["points"][p], dim,
                                           pa + "/points/" + std::to_string(p)));
      }
      descs.push_back(std::move(h));
    } else {
      throw SchemaError(pa + "/type", "expected \"ball\" or \"hull\"");
    }
  }
  return ConvexBody<K>(space, dim, std::move(descs), interior);
}

}  // namespace io_detail

template <scalar_field K>
inline InstanceData<K> parse_instance(const json& j) {
  InstanceData<K> out;
  out.space = parse_space(j);
  if (!j.contains("dim") || !j["dim"].is_number_unsigned() || j["dim"] == 0) {
    throw SchemaError("/dim", "expected a positive integer");
  }
  out.dim = j["dim"].get<std::size_t>();

  if (j.contains("functionals")) {
    if (!j["functionals"].is_array()) {
      throw SchemaError("/functionals", "expected an array of functionals");
    }
    for (std::size_t i = 0; i < j["functionals"].size(); ++i) {
      out.functionals.emplace_back(io_detail::parse_element<K>(
          j["functionals"][i], out.space, out.dim,
          "/functionals/" + std::to_string(i)));
    }
  }
  if (j.contains("targets")) {
    if (!j["targets"].is_array()) {
      throw SchemaError("/targets", "expected an array of per-atom scalars");
    }
    for (std::size_t i = 0; i < j["targets"].size(); ++i) {
      out.targets.push_back(io_detail::parse_l0<K>(
          j["targets"][i], out.space, "/targets/" + std::to_string(i)));
    }
  }
  if (j.contains("beta")) {
    out.beta = io_detail::parse_l0<double>(j["beta"], out.space, "/beta");
    if (!out.beta->in_l0_plus()) throw SchemaError("/beta", "beta must be >= 0 atom-wise");
  }
  if (j.contains("epsilon")) {
    out.epsilon = io_detail::parse_l0<double>(j["epsilon"], out.space, "/epsilon");
    if (!out.epsilon->in_l0_plus_plus()) {
      throw SchemaError("/epsilon", "epsilon must be > 0 atom-wise");
    }
  }
  if (j.contains("bodies")) {
    const json& jb = j["bodies"];
    if (!jb.is_object()) throw SchemaError("/bodies", "expected an object");
    if (jb.contains("G")) {
      out.body_g = io_detail::parse_body<K>(jb["G"], out.space, out.dim, "/bodies/G");
    }
    if (jb.contains("M")) {
      out.body_m = io_detail::parse_body<K>(jb["M"], out.space, out.dim, "/bodies/M");
    }
    if (jb.contains("B")) {
      out.body_b = io_detail::parse_body<K>(jb["B"], out.space, out.dim, "/bodies/B");
    }
  }
  if (j.contains("x")) {
    out.point = io_detail::parse_element<K>(j["x"], out.space, out.dim, "/x");
  }
  return out;
}

template <scalar_field K>
inline json element_to_json(const RNElement<K>& x) {
  json out = json::array();
  for (std::size_t a = 0; a < x.space()->size(); ++a) {
    json row = json::array();
    for (std::size_t c = 0; c < x.dim(); ++c) {
      row.push_back(io_detail::scalar_to_json<K>(x.at(a, c)));
    }
    out.push_back(row);
  }
  return out;
}

template <scalar_field K>
inline json l0_to_json(const L0Scalar<K>& v) {
  json out = json::array();
  for (std::size_t a = 0; a < v.size(); ++a) {
    out.push_back(io_detail::scalar_to_json<K>(v.at(a)));
  }
  return out;
}

template <scalar_field K>
inline json body_to_json(const ConvexBody<K>& b) {
  json atoms = json::array();
  for (std::size_t a = 0; a < b.space()->size(); ++a) {
    const auto& d = b.desc(a);
    json ja;
    if (const auto* ball = std::get_if<typename ConvexBody<K>::Ball>(&d)) {
      ja["type"] = "ball";
      json center = json::array();
      for (K c : ball->center) center.push_back(io_detail::scalar_to_json<K>(c));
      ja["center"] = center;
      ja["radius"] = ball->radius;
    } else {
      const auto& hull = std::get<typename ConvexBody<K>::Hull>(d);
      ja["type"] = "hull";
      json pts = json::array();
      for (const auto& p : hull.points) {
        json pt = json::array();
        for (K c : p) pt.push_back(io_detail::scalar_to_json<K>(c));
        pts.push_back(pt);
      }
      ja["points"] = pts;
    }
    atoms.push_back(ja);
  }
  json out;
  out["atoms"] = atoms;
  if (b.nonempty_interior()) out["interior"] = true;
  return out;
}

/// Canonical serialization; parsing its output reproduces the instance.
template <scalar_field K>
inline json instance_to_json(const InstanceData<K>& inst) {
  json out;
  json atoms = json::array();
  for (std::size_t a = 0; a < inst.space->size(); ++a) {
    atoms.push_back({{"id", inst.space->id(a)}, {"prob", inst.space->prob(a)}});
  }
  out["space"] = {{"atoms", atoms}};
  out["field"] = is_complex_v<K> ? "complex" : "real";
  out["dim"] = inst.dim;
  if (!inst.functionals.empty()) {
    json fs = json::array();
    for (const auto& f : inst.functionals) fs.push_back(element_to_json<K>(f.riesz()));
    out["functionals"] = fs;
  }
  if (!inst.targets.empty()) {
    json ts = json::array();
    for (const auto& t : inst.targets) ts.push_back(l0_to_json<K>(t));
    out["targets"] = ts;
  }
  if (inst.beta) out["beta"] = l0_to_json<double>(*inst.beta);
  if (inst.epsilon) out["epsilon"] = l0_to_json<double>(*inst.epsilon);
  if (inst.body_g || inst.body_m || inst.body_b) {
    json bodies;
    if (inst.body_g) bodies["G"] = body_to_json<K>(*inst.body_g);
    if (inst.body_m) bodies["M"] = body_to_json<K>(*inst.body_m);
    if (inst.body_b) bodies["B"] = body_to_json<K>(*inst.body_b);
    out["bodies"] = bodies;
  }
  if (inst.point) out["x"] = element_to_json<K>(*inst.point);
  return out;
}

}  // namespace rnm
