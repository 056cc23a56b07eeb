#pragma once

#include <cmath>
#include <fstream>
#include <string>
#include <utility>

#include "json.hpp"

#include "radial/errors.hpp"
#include "radial/problems/ball_sqrt.hpp"
#include "radial/problems/linear_program.hpp"
#include "radial/problems/piecewise_max.hpp"

namespace radial {

namespace detail {

inline double json_number(const nlohmann::json& doc, const std::string& field) {
  if (!doc.is_number())
    throw LoadError(field + ": expected a number");
  const double v = doc.get<double>();
  if (!std::isfinite(v)) throw LoadError(field + ": must be finite");
  return v;
}

inline Point json_point(const nlohmann::json& doc, const std::string& field,
                        std::size_t expected) {
  if (!doc.is_array())
    throw LoadError(field + ": expected an array of numbers");
  if (doc.size() != expected)
    throw LoadError(field + ": expected length " + std::to_string(expected) +
                    ", got " + std::to_string(doc.size()));
  Point out;
  out.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i)
    out.push_back(json_number(doc[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace detail

// Parses a problem document. Throws LoadError with the offending field's
// path on any schema or validation failure.
inline ProblemInstance load_problem_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw LoadError("document: expected a JSON object");
  if (!doc.contains("kind") || !doc["kind"].is_string())
    throw LoadError("kind: required string field");
  const std::string kind = doc["kind"].get<std::string>();
  if (!doc.contains("dimension") || !doc["dimension"].is_number_integer() ||
      doc["dimension"].get<long>() < 1)
    throw LoadError("dimension: required positive integer field");
  const std::size_t n = doc["dimension"].get<std::size_t>();

  ProblemInstance instance;
  if (kind == "lp") {
    LinearProgramData data;
    if (!doc.contains("A") || !doc["A"].is_array())
      throw LoadError("A: required array field");
    for (std::size_t i = 0; i < doc["A"].size(); ++i)
      data.A.push_back(detail::json_point(doc["A"][i], "A[" + std::to_string(i) + "]", n));
    if (!doc.contains("b") || !doc["b"].is_array())
      throw LoadError("b: required array field");
    for (std::size_t i = 0; i < doc["b"].size(); ++i) {
      const std::string field = "b[" + std::to_string(i) + "]";
      const double bi = detail::json_number(doc["b"][i], field);
      if (!(bi > 0.0)) throw LoadError(field + ": must be strictly positive");
      data.b.push_back(bi);
    }
    if (data.A.size() != data.b.size())
      throw LoadError("b: expected one entry per row of A");
    if (!doc.contains("c")) throw LoadError("c: required array field");
    data.c = detail::json_point(doc["c"], "c", n);
    data.h = doc.contains("h") ? detail::json_number(doc["h"], "h") : 1.0;
    if (!(data.h > 0.0)) throw LoadError("h: must be positive");
    instance = make_linear_program(std::move(data));
  } else if (kind == "ball_sqrt") {
    if (!doc.contains("center")) throw LoadError("center: required array field");
    BallSqrtData data{detail::json_point(doc["center"], "center", n)};
    if (!(norm(data.center) < 1.0))
      throw LoadError("center: must have norm < 1");
    instance = make_ball_sqrt(std::move(data));
  } else if (kind == "piecewise_max") {
    if (!doc.contains("pieces") || !doc["pieces"].is_array() || doc["pieces"].empty())
      throw LoadError("pieces: required nonempty array field");
    PiecewiseMaxData data;
    double b_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < doc["pieces"].size(); ++i) {
      const std::string field = "pieces[" + std::to_string(i) + "]";
      const nlohmann::json& pj = doc["pieces"][i];
      if (!pj.is_object() || !pj.contains("a") || !pj.contains("b"))
        throw LoadError(field + ": expected an object with fields a and b");
      PiecewisePiece piece;
      piece.a = detail::json_point(pj["a"], field + ".a", n);
      piece.b = detail::json_number(pj["b"], field + ".b");
      b_max = std::max(b_max, piece.b);
      data.pieces.push_back(std::move(piece));
    }
    if (!(b_max < 0.0))
      throw LoadError("pieces: max b must be negative so that f(0) < 0");
    instance = make_piecewise_max(std::move(data));
  } else {
    throw LoadError("kind: unknown problem kind \"" + kind + "\"");
  }

  if (doc.contains("metadata")) {
    const nlohmann::json& md = doc["metadata"];
    if (!md.is_object()) throw LoadError("metadata: expected an object");
    if (md.contains("f_star")) {
      const double v = detail::json_number(md["f_star"], "metadata.f_star");
      if (!(v < 0.0)) throw LoadError("metadata.f_star: must be negative");
      instance.metadata.f_star = v;
    }
    if (md.contains("optimum"))
      instance.metadata.optimum = detail::json_point(md["optimum"], "metadata.optimum", n);
    if (md.contains("dist_to_opt")) {
      const double v = detail::json_number(md["dist_to_opt"], "metadata.dist_to_opt");
      if (v < 0.0) throw LoadError("metadata.dist_to_opt: must be nonnegative");
      instance.metadata.dist_to_opt = v;
    }
    if (md.contains("radius_R")) {
      const double v = detail::json_number(md["radius_R"], "metadata.radius_R");
      if (!(v > 0.0)) throw LoadError("metadata.radius_R: must be positive");
      instance.metadata.radius_R = v;
    }
    if (md.contains("diameter_D")) {
      const double v = detail::json_number(md["diameter_D"], "metadata.diameter_D");
      if (!(v > 0.0)) throw LoadError("metadata.diameter_D: must be positive");
      instance.metadata.diameter_D = v;
    }
  }

  // Cross-check supplied ground truth: a declared optimum must actually
  // attain the declared optimal value.
  if (instance.metadata.optimum) {
    if (!instance.metadata.f_star)
      throw LoadError("metadata.optimum: requires metadata.f_star");
    ExtendedValue v = evaluate(instance, *instance.metadata.optimum);
    const double fs = *instance.metadata.f_star;
    if (!v.is_finite() || std::abs(v.finite() - fs) > 1e-6 * std::max(1.0, std::abs(fs)))
      throw LoadError("metadata.optimum: objective there does not match metadata.f_star");
  }
  return instance;
}

inline ProblemInstance load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError(path + ": cannot open problem file");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(path + ": " + e.what());
  }
  return load_problem_json(doc);
}

// ---------------------------------------------------------------------------
// Writers (for tooling and round-trip tests)

namespace detail {

inline void metadata_to_json(const ProblemMetadata& md, nlohmann::json& doc) {
  nlohmann::json out = nlohmann::json::object();
  if (md.f_star) out["f_star"] = *md.f_star;
  if (md.optimum) out["optimum"] = *md.optimum;
  if (md.dist_to_opt) out["dist_to_opt"] = *md.dist_to_opt;
  if (md.radius_R) out["radius_R"] = *md.radius_R;
  if (md.diameter_D) out["diameter_D"] = *md.diameter_D;
  if (!out.empty()) doc["metadata"] = std::move(out);
}

}  // namespace detail

inline nlohmann::json to_problem_json(const LinearProgramData& data,
                                      const ProblemMetadata& md = {}) {
  nlohmann::json doc;
  doc["kind"] = "lp";
  doc["dimension"] = data.c.size();
  doc["A"] = data.A;
  doc["b"] = data.b;
  doc["c"] = data.c;
  doc["h"] = data.h;
  detail::metadata_to_json(md, doc);
  return doc;
}

inline nlohmann::json to_problem_json(const BallSqrtData& data,
                                      const ProblemMetadata& md = {}) {
  nlohmann::json doc;
  doc["kind"] = "ball_sqrt";
  doc["dimension"] = data.center.size();
  doc["center"] = data.center;
  detail::metadata_to_json(md, doc);
  return doc;
}

inline nlohmann::json to_problem_json(const PiecewiseMaxData& data,
                                      const ProblemMetadata& md = {}) {
  nlohmann::json doc;
  doc["kind"] = "piecewise_max";
  doc["dimension"] = data.pieces.empty() ? 0 : data.pieces.front().a.size();
  doc["pieces"] = nlohmann::json::array();
  for (const PiecewisePiece& p : data.pieces)
    doc["pieces"].push_back({{"a", p.a}, {"b", p.b}});
  detail::metadata_to_json(md, doc);
  return doc;
}

}  // namespace radial
