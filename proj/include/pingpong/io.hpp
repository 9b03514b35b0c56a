#pragma once

// JSON problem files, certificates and reports. Every number is an integer or
// an exact fraction string such as "-3/2"; binary floats are rejected.

#include <optional>
#include <string>

#include "json.hpp"
#include "pingpong/engine.hpp"
#include "pingpong/moebius.hpp"
#include "pingpong/words.hpp"

namespace pingpong {

using Json = nlohmann::ordered_json;

inline constexpr int kReportFormat = 1;
inline constexpr const char* kToolVersion = "0.1.0";

struct ProblemOptions {
  std::optional<std::vector<Rational>> radii;
  std::optional<QVector> basepoint;
  std::optional<unsigned> depth;
  std::optional<ExponentConvention> convention;
  std::optional<RelationMode> mode;
  std::optional<std::size_t> max_syllables;
  std::optional<long> exponent_box;
  std::optional<unsigned long long> budget;
};

struct ProblemFile {
  Problem problem;
  ProblemOptions options;
};

/// Schema errors are invalid_input naming the offending location, e.g.
/// "row length: lattice.gram[1] has 1 entries, expected 2".
ProblemFile parse_problem(const Json& doc);
ProblemFile load_problem(const std::string& path);
Json load_json(const std::string& path);

Json to_json(const Rational& q);
Json to_json(const QVector& v);
Json to_json(const ZVector& v);
Json to_json(const ZMatrix& m);
Json to_json(const Box& b);

Rational rational_from_json(const Json& j, const std::string& where);
Integer integer_from_json(const Json& j, const std::string& where);

std::string to_string(ExponentConvention c);
ExponentConvention convention_from_string(const std::string& s);
std::string to_string(RelationMode m);
RelationMode mode_from_string(const std::string& s);

/// Ends with "digest", the fnv1a_hex of the dump of every other field.
Json certificate_to_json(const Certificate& c);
/// Errors: invalid_input for structural problems. The digest is not checked.
Certificate certificate_from_json(const Json& j);
std::string certificate_digest(const Certificate& c);
/// recheck plus the digest comparison. Errors: as certificate_from_json.
RecheckResult recheck_certificate_json(const Json& j);

Json word_to_json(const Word& w, const WordGroup& group);
Json moebius_pingpong_to_json(const MoebiusPingPong& r);

/// {"format": 1, "tool", "version", "command", "status", "input_digest",
///  "payload", "timings"}; timings are kept apart from the deterministic part.
Json make_report(const std::string& command, const std::string& status, const std::string& digest, Json payload,
                 Json timings);

}  // namespace pingpong
