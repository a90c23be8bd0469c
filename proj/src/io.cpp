#include "recon/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <regex>
#include <sstream>

#include "recon/error.hpp"

namespace recon {

namespace {

void dump_rec(const Json& j, int indent, int level, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent * (level + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * level), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        dump_rec(it.value(), indent, level + 1, out);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      if (j.empty()) {
        out += "[]";
      } else if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_rec(j[i], indent, level + 1, out);
        }
        out += "]";
      } else {
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ",\n";
          out += pad;
          dump_rec(j[i], indent, level + 1, out);
        }
        out += "\n" + close_pad + "]";
      }
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

Json exact_json(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) == 1 && num <= std::numeric_limits<long long>::max() &&
      num >= std::numeric_limits<long long>::min()) {
    return num.convert_to<long long>();
  }
  return to_string(r);
}

bool is_exact_entry(const Json& j) { return j.is_number_integer() || j.is_string(); }

Rational exact_entry(const Json& j) {
  if (j.is_number_unsigned()) return Rational(Integer(j.get<unsigned long long>()));
  if (j.is_number_integer()) return Rational(Integer(j.get<long long>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(ErrorKind::ParseError, "expected an integer or \"p/q\", got " + j.dump());
}

double float_entry(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
  throw Error(ErrorKind::ParseError, "expected a number, got " + j.dump());
}

// [re, im] or a bare real.
bool complex_is_exact(const Json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw Error(ErrorKind::ParseError, "complex value must be [re, im], got " + j.dump());
    return is_exact_entry(j[0]) && is_exact_entry(j[1]);
  }
  return is_exact_entry(j);
}

ExactComplex exact_complex(const Json& j) {
  if (j.is_array()) return {exact_entry(j[0]), exact_entry(j[1])};
  return {exact_entry(j), Rational(0)};
}

Complex float_complex(const Json& j) {
  if (j.is_array()) return {float_entry(j[0]), float_entry(j[1])};
  return {float_entry(j), 0.0};
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw Error(ErrorKind::ParseError, std::string("missing field '") + name + "'");
  }
  return j.at(name);
}

std::pair<int, int> parse_pair_key(const std::string& key) {
  static const std::regex re(R"(^\s*(\d+)\s*-\s*(\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(key, m, re)) throw Error(ErrorKind::ParseError, "bad segment key '" + key + "'");
  int i = std::stoi(m[1]), j = std::stoi(m[2]);
  if (i == j) throw Error(ErrorKind::ParseError, "segment '" + key + "' joins a vertex to itself");
  if (i > j) std::swap(i, j);
  return {i, j};
}

Quad4 parse_quad_key(const std::string& key) {
  static const std::regex re(R"(^\s*(\d+)-(\d+)-(\d+)-(\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(key, m, re)) throw Error(ErrorKind::ParseError, "bad quadrilateral key '" + key + "'");
  Quad4 q{std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]), std::stoi(m[4])};
  if (!(q[0] < q[1] && q[1] < q[2] && q[2] < q[3])) {
    throw Error(ErrorKind::ParseError, "quadrilateral key '" + key + "' must be increasing");
  }
  return q;
}

double parse_double(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty number");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw Error(ErrorKind::ParseError, "bad number '" + s + "'");
  return v;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

bool looks_rational(const std::string& s) {
  static const std::regex re(R"(^[+-]?\d+(/[+-]?\d+)?$)");
  return std::regex_match(s, re);
}

SurfaceTag surface_field(const Json& j) {
  const Json& s = field(j, "surface");
  if (!s.is_string()) throw Error(ErrorKind::ParseError, "surface must be a string");
  return parse_surface(s.get<std::string>());
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "null";
  if (std::isinf(x)) return x > 0 ? "1e999" : "-1e999";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump_rec(j, indent, 0, out);
  return out;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write '" + path + "'");
  out << content;
}

Json to_json(const TraceFunction& tf) {
  Json j;
  j["surface"] = std::string(to_string(tf.surface));
  j["mode"] = std::string(to_string(tf.mode));
  j["boundary"] = Json::object();
  for (const auto& [k, v] : tf.boundary) j["boundary"][k] = Json::array({v.real(), v.imag()});
  j["values"] = Json::object();
  for (const auto& [s, v] : tf.values) j["values"][s.str()] = Json::array({v.real(), v.imag()});
  return j;
}

Json to_json(const ExactTraceFunction& tf) {
  Json j;
  j["surface"] = std::string(to_string(tf.surface));
  j["mode"] = std::string(to_string(tf.mode));
  j["boundary"] = Json::object();
  for (const auto& [k, v] : tf.boundary) j["boundary"][k] = Json::array({exact_json(v.re), exact_json(v.im)});
  j["values"] = Json::object();
  for (const auto& [s, v] : tf.values) j["values"][s.str()] = Json::array({exact_json(v.re), exact_json(v.im)});
  return j;
}

LoadedTrace trace_from_json(const Json& j) {
  LoadedTrace out;
  const SurfaceTag surface = surface_field(j);
  const Json& mode_j = field(j, "mode");
  if (!mode_j.is_string()) throw Error(ErrorKind::ParseError, "mode must be a string");
  const TraceMode mode = parse_mode(mode_j.get<std::string>());
  const Json& boundary = field(j, "boundary");
  const Json& values = field(j, "values");
  if (!boundary.is_object() || !values.is_object()) {
    throw Error(ErrorKind::ParseError, "boundary and values must be objects");
  }
  bool exact = true;
  for (const auto& [k, v] : boundary.items()) exact = exact && complex_is_exact(v);
  for (const auto& [k, v] : values.items()) exact = exact && complex_is_exact(v);
  out.exact = exact;
  out.floating = {surface, mode, {}, {}};
  out.exact_tf = {surface, mode, {}, {}};
  for (const auto& [k, v] : boundary.items()) {
    if (exact) out.exact_tf.boundary[k] = exact_complex(v);
    out.floating.boundary[k] = float_complex(v);
  }
  for (const auto& [k, v] : values.items()) {
    const Slope s = Slope::parse(k);
    if (exact) out.exact_tf.values[s] = exact_complex(v);
    out.floating.values[s] = float_complex(v);
  }
  return out;
}

Json to_json(const IntersectionFunction& f) {
  Json j;
  j["surface"] = std::string(to_string(f.surface));
  j["boundary"] = Json::object();
  for (const auto& [k, v] : f.boundary) j["boundary"][k] = v;
  j["values"] = Json::object();
  for (const auto& [s, v] : f.values) j["values"][s.str()] = v;
  return j;
}

Json to_json(const ExactIntersectionFunction& f) {
  Json j;
  j["surface"] = std::string(to_string(f.surface));
  j["boundary"] = Json::object();
  for (const auto& [k, v] : f.boundary) j["boundary"][k] = exact_json(v);
  j["values"] = Json::object();
  for (const auto& [s, v] : f.values) j["values"][s.str()] = exact_json(v);
  return j;
}

LoadedLamination lamination_from_json(const Json& j) {
  LoadedLamination out;
  const SurfaceTag surface = surface_field(j);
  const Json& boundary = field(j, "boundary");
  const Json& values = field(j, "values");
  if (!boundary.is_object() || !values.is_object()) {
    throw Error(ErrorKind::ParseError, "boundary and values must be objects");
  }
  bool exact = true;
  for (const auto& [k, v] : boundary.items()) exact = exact && is_exact_entry(v);
  for (const auto& [k, v] : values.items()) exact = exact && is_exact_entry(v);
  out.exact = exact;
  out.floating.surface = out.exact_f.surface = surface;
  for (const auto& [k, v] : boundary.items()) {
    if (exact) out.exact_f.boundary[k] = exact_entry(v);
    out.floating.boundary[k] = float_entry(v);
  }
  for (const auto& [k, v] : values.items()) {
    const Slope s = Slope::parse(k);
    if (exact) out.exact_f.values[s] = exact_entry(v);
    out.floating.values[s] = float_entry(v);
  }
  return out;
}

Json to_json(const VerificationReport& r) {
  Json j;
  j["ok"] = r.ok();
  j["checked_triangles"] = r.checked_triangles;
  j["checked_flips"] = r.checked_flips;
  if (r.checked_pairs) j["checked_pairs"] = r.checked_pairs;
  j["max_residual"] = r.max_residual;
  j["violations"] = Json::array();
  for (const Violation& v : r.violations) {
    Json e;
    e["relation"] = v.relation;
    e["location"] = v.location;
    e["residual"] = v.residual;
    j["violations"].push_back(e);
  }
  return j;
}

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s.push_back(c);
  }
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty complex number");
  if (s.back() != 'i') return {parse_double(s), 0.0};
  s.pop_back();
  // Split at the last sign that is not an exponent sign or the leading one.
  std::size_t split_at = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  auto imag_part = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_double(t);
  };
  if (split_at == std::string::npos) return {0.0, imag_part(s)};
  return {parse_double(s.substr(0, split_at)), imag_part(s.substr(split_at))};
}

std::optional<Matrix2Q> parse_exact_matrix(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 4) throw Error(ErrorKind::ParseError, "matrix needs 4 comma-separated entries");
  for (const auto& p : parts) {
    if (!looks_rational(p)) return std::nullopt;
  }
  return Matrix2Q{parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2]),
                  parse_rational(parts[3])};
}

Matrix2C parse_complex_matrix(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 4) throw Error(ErrorKind::ParseError, "matrix needs 4 comma-separated entries");
  std::array<Complex, 4> e;
  for (int i = 0; i < 4; ++i) {
    e[i] = looks_rational(parts[i]) ? Complex(to_double(parse_rational(parts[i])), 0.0) : parse_complex(parts[i]);
  }
  return {e[0], e[1], e[2], e[3]};
}

Json to_json(const UniModMatrix& m) {
  return Json::array({exact_json(Rational(m.m11())), exact_json(Rational(m.m12())), exact_json(Rational(m.m21())),
                      exact_json(Rational(m.m22()))});
}

UniModMatrix unimod_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 4) throw Error(ErrorKind::ParseError, "matrix must be a 4-element array");
  std::array<Integer, 4> e;
  for (int i = 0; i < 4; ++i) {
    const Rational r = exact_entry(j[i]);
    if (boost::multiprecision::denominator(r) != 1) throw Error(ErrorKind::ParseError, "matrix entries must be integers");
    e[i] = boost::multiprecision::numerator(r);
  }
  return {e[0], e[1], e[2], e[3]};
}

UniModMatrix parse_unimod(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 4) throw Error(ErrorKind::ParseError, "matrix needs 4 comma-separated entries");
  return {parse_integer(parts[0]), parse_integer(parts[1]), parse_integer(parts[2]), parse_integer(parts[3])};
}

Json to_json(const TwistWord& w) {
  Json j = Json::array();
  for (const TwistLetter& l : w) j.push_back(Json::array({l.slope.str(), l.exponent}));
  return j;
}

TwistWord twist_word_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "twist word must be a list");
  TwistWord w;
  for (const Json& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_number_integer()) {
      throw Error(ErrorKind::ParseError, "twist letter must be [\"p/q\", exponent], got " + e.dump());
    }
    w.push_back({Slope::parse(e[0].get<std::string>()), e[1].get<long long>()});
  }
  return w;
}

Json to_json(const CongruenceWord& w) {
  Json j;
  j["word"] = w.letters;
  j["sign"] = w.sign;
  return j;
}

CongruenceWord congruence_word_from_json(const Json& j) {
  const Json& word = field(j, "word");
  const Json& sign = field(j, "sign");
  if (!word.is_string() || !sign.is_number_integer()) throw Error(ErrorKind::ParseError, "bad congruence word");
  CongruenceWord w{word.get<std::string>(), sign.get<int>()};
  for (char c : w.letters) letter_matrix(c);
  if (w.sign != 1 && w.sign != -1) throw Error(ErrorKind::ParseError, "sign must be 1 or -1");
  return w;
}

std::map<std::pair<int, int>, double> lengths_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "length table must be an object");
  std::map<std::pair<int, int>, double> out;
  for (const auto& [k, v] : j.items()) out[parse_pair_key(k)] = float_entry(v);
  return out;
}

QuadMetric quad_metric_from_json(const Json& j) {
  const Json& table = j.is_object() && j.contains("lengths") ? j.at("lengths") : j;
  const auto lengths = lengths_from_json(table);
  QuadMetric q;
  for (int a = 1; a <= 4; ++a) {
    for (int b = a + 1; b <= 4; ++b) {
      auto it = lengths.find({a, b});
      if (it == lengths.end()) {
        throw Error(ErrorKind::ParseError, "missing length " + std::to_string(a) + "-" + std::to_string(b));
      }
      q.at(a, b) = it->second;
    }
  }
  return q;
}

Json to_json(const QuadMetric& q) {
  Json j;
  for (int a = 1; a <= 4; ++a)
    for (int b = a + 1; b <= 4; ++b) j[std::to_string(a) + "-" + std::to_string(b)] = q.at(a, b);
  return j;
}

std::pair<int, std::map<Quad4, QuadMetric>> quads_from_json(const Json& j) {
  const Json& n = field(j, "n");
  if (!n.is_number_integer()) throw Error(ErrorKind::ParseError, "n must be an integer");
  const Json& quads = field(j, "quads");
  if (!quads.is_object()) throw Error(ErrorKind::ParseError, "quads must be an object");
  std::map<Quad4, QuadMetric> out;
  for (const auto& [k, v] : quads.items()) out[parse_quad_key(k)] = quad_metric_from_json(v);
  return {n.get<int>(), out};
}

Json quads_to_json(int n, const std::map<Quad4, QuadMetric>& quads) {
  Json j;
  j["n"] = n;
  j["quads"] = Json::object();
  for (const auto& [k, q] : quads) j["quads"][quad_key(k)] = to_json(q);
  return j;
}

Json to_json(const PlanarPolygon& p) {
  Json j;
  j["vertices"] = Json::array();
  for (const Point& v : p.vertices) j["vertices"].push_back(Json::array({v.real(), v.imag()}));
  return j;
}

PlanarPolygon polygon_from_json(const Json& j) {
  const Json& verts = field(j, "vertices");
  if (!verts.is_array()) throw Error(ErrorKind::ParseError, "vertices must be a list");
  PlanarPolygon p;
  for (const Json& v : verts) {
    if (!v.is_array() || v.size() != 2) throw Error(ErrorKind::ParseError, "vertex must be [x, y]");
    p.vertices.emplace_back(float_entry(v[0]), float_entry(v[1]));
  }
  return p;
}

}  // namespace recon
