#include "tropical/document.hpp"

#include <set>

namespace tropical {

namespace {

const std::set<std::string, std::less<>> kDataFields = {"A", "B", "C", "D", "p", "q", "g", "h", "r"};
const std::set<std::string, std::less<>> kMetaFields = {"schema", "semifield", "kind", "verify", "comment"};

template <Semifield F>
Problem<F> problem_from_json(const Json& j, ProblemKind kind) {
  const KindInfo& info = kind_info(kind);
  for (const auto& [key, value] : j.items()) {
    if (kMetaFields.count(key)) continue;
    if (!kDataFields.count(key)) throw Error(ErrorCode::parse, key + ": unknown field");
    const bool used = key == "r" ? info.needs_r
                                 : (info.matrices.find(key[0]) != std::string_view::npos ||
                                    info.vectors.find(key[0]) != std::string_view::npos);
    if (!used) throw Error(ErrorCode::parse, key + ": not an input of kind " + std::string(info.name));
  }
  Problem<F> pr;
  pr.kind = kind;
  auto require = [&](char name) -> const Json& {
    const std::string key(1, name);
    if (!j.contains(key)) throw Error(ErrorCode::parse, key + ": required by kind " + std::string(info.name));
    return j.at(key);
  };
  for (char m : info.matrices) {
    Matrix<F> a = matrix_from_json<F>(require(m), std::string(1, m));
    switch (m) {
      case 'A': pr.A = std::move(a); break;
      case 'B': pr.B = std::move(a); break;
      case 'C': pr.C = std::move(a); break;
      default: pr.D = std::move(a); break;
    }
  }
  for (char v : info.vectors) {
    Vector<F> x = vector_from_json<F>(require(v), std::string(1, v));
    switch (v) {
      case 'p': pr.p = std::move(x); break;
      case 'q': pr.q = std::move(x); break;
      case 'g': pr.g = std::move(x); break;
      default: pr.h = std::move(x); break;
    }
  }
  if (info.needs_r) pr.r = scalar_from_json<F>(require('r'), "r");
  return pr;
}

VerifySettings verify_from_json(const Json& j) {
  VerifySettings out;
  if (!j.is_object()) throw Error(ErrorCode::parse, "verify: expected an object");
  for (const auto& [key, value] : j.items()) {
    const std::string path = "verify." + key;
    if (key == "samples" || key == "seed") {
      if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
        throw Error(ErrorCode::parse, path + ": expected a nonnegative integer");
      }
      if (key == "samples") {
        out.samples = value.get<std::int64_t>();
      } else {
        out.seed = value.get<std::uint64_t>();
      }
    } else if (key == "step") {
      out.step = rational_from_json(value, path);
    } else if (key == "window") {
      out.window = rational_from_json(value, path);
    } else if (key == "radius") {
      out.radius = rational_from_json(value, path);
    } else {
      throw Error(ErrorCode::parse, path + ": unknown setting");
    }
  }
  return out;
}

}  // namespace

SemifieldTag parse_semifield(std::string_view name) {
  if (name == MaxPlus::name) return SemifieldTag::max_plus;
  if (name == MinPlus::name) return SemifieldTag::min_plus;
  if (name == MaxTimes::name) return SemifieldTag::max_times;
  if (name == MinTimes::name) return SemifieldTag::min_times;
  throw Error(ErrorCode::parse, "unknown semifield '" + std::string(name) +
                                    "' (expected max-plus, min-plus, max-times or min-times)");
}

std::string_view semifield_name(SemifieldTag tag) {
  switch (tag) {
    case SemifieldTag::max_plus: return MaxPlus::name;
    case SemifieldTag::min_plus: return MinPlus::name;
    case SemifieldTag::max_times: return MaxTimes::name;
    case SemifieldTag::min_times: return MinTimes::name;
  }
  return "?";
}

Rational rational_from_json(const Json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_number_float()) return parse_rational(j.dump());
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    throw Error(ErrorCode::parse, path + ": " + e.what());
  }
  throw Error(ErrorCode::parse, path + ": expected a number or a rational string");
}

Json rational_to_json(const Rational& r) {
  if (r.denominator() == 1) return r.numerator();
  return format_rational(r);
}

ProblemDocument parse_document(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::parse, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::parse, "top level: expected an object");
  if (j.contains("schema") && j["schema"] != kProblemSchema) {
    throw Error(ErrorCode::parse, "schema: unsupported, expected " + std::string(kProblemSchema));
  }
  if (!j.contains("semifield") || !j["semifield"].is_string()) {
    throw Error(ErrorCode::parse, "semifield: required string");
  }
  if (!j.contains("kind") || !j["kind"].is_string()) throw Error(ErrorCode::parse, "kind: required string");
  const auto kind = parse_kind(j["kind"].get<std::string>());
  if (!kind) throw Error(ErrorCode::parse, "kind: unknown problem kind '" + j["kind"].get<std::string>() + "'");

  ProblemDocument doc{Problem<MaxPlus>{}, {}};
  switch (parse_semifield(j["semifield"].get<std::string>())) {
    case SemifieldTag::max_plus: doc.problem = problem_from_json<MaxPlus>(j, *kind); break;
    case SemifieldTag::min_plus: doc.problem = problem_from_json<MinPlus>(j, *kind); break;
    case SemifieldTag::max_times: doc.problem = problem_from_json<MaxTimes>(j, *kind); break;
    case SemifieldTag::min_times: doc.problem = problem_from_json<MinTimes>(j, *kind); break;
  }
  if (j.contains("verify")) doc.verify = verify_from_json(j["verify"]);
  return doc;
}

}  // namespace tropical
