#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "recon/characters.hpp"
#include "recon/laminations.hpp"
#include "recon/mcg.hpp"
#include "recon/polygons.hpp"
#include "recon/report.hpp"

namespace recon {

using Json = nlohmann::ordered_json;

/// %.17g, with ".0" appended when the result would read back as an integer.
std::string format_double(double x);

/// Like Json::dump but floats always go through format_double, so output is
/// byte-stable across platforms.
std::string dump_json(const Json& j, int indent = 2);

/// Parses JSON text; throws Error(ParseError) with the parser's message.
Json parse_json(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Trace functions. Exact scalars are written as JSON integers or "p/q"
// strings, floats as numbers. A file whose entries are all integers or "p/q"
// strings reads back on the exact pipeline.
Json to_json(const TraceFunction& tf);
Json to_json(const ExactTraceFunction& tf);

struct LoadedTrace {
  bool exact = false;
  TraceFunction floating;
  ExactTraceFunction exact_tf;
};
LoadedTrace trace_from_json(const Json& j);

Json to_json(const IntersectionFunction& f);
Json to_json(const ExactIntersectionFunction& f);

struct LoadedLamination {
  bool exact = false;
  IntersectionFunction floating;
  ExactIntersectionFunction exact_f;
};
LoadedLamination lamination_from_json(const Json& j);

Json to_json(const VerificationReport& r);

/// Comma-separated row-major entries. Exact when every entry is an integer or
/// "p/q"; complex entries are written like "1.5+2i".
std::optional<Matrix2Q> parse_exact_matrix(std::string_view text);
Matrix2C parse_complex_matrix(std::string_view text);
Complex parse_complex(std::string_view text);

Json to_json(const UniModMatrix& m);
UniModMatrix unimod_from_json(const Json& j);
UniModMatrix parse_unimod(std::string_view text);  // "a,b,c,d"

Json to_json(const TwistWord& w);
TwistWord twist_word_from_json(const Json& j);
Json to_json(const CongruenceWord& w);
CongruenceWord congruence_word_from_json(const Json& j);

/// {"1-2": 1.0, ...} keyed by 1-based vertex pairs.
std::map<std::pair<int, int>, double> lengths_from_json(const Json& j);
QuadMetric quad_metric_from_json(const Json& j);
Json to_json(const QuadMetric& q);
/// {"n": n, "quads": {"1-2-3-4": {...}, ...}}
std::pair<int, std::map<Quad4, QuadMetric>> quads_from_json(const Json& j);
Json quads_to_json(int n, const std::map<Quad4, QuadMetric>& quads);
Json to_json(const PlanarPolygon& p);
PlanarPolygon polygon_from_json(const Json& j);

}  // namespace recon
