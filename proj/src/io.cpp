#include "treedyn/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace treedyn {

namespace {

json entry(const Vertex& v, cplx c) {
  return json{{"word", std::vector<int>(v.word().begin(), v.word().end())}, {"re", c.real()}, {"im", c.imag()}};
}

template <typename T>
T require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::InvalidArgument, std::string("JSON field '") + key + "' is missing");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::InvalidArgument, std::string("JSON field '") + key + "' has the wrong type");
  }
}

std::pair<Vertex, cplx> parse_entry(const json& e, const TreeParams& params) {
  const auto word = require<std::vector<int>>(e, "word");
  const double re = e.contains("re") ? require<double>(e, "re") : 0.0;
  const double im = e.contains("im") ? require<double>(e, "im") : 0.0;
  return {parse_vertex(word, params), cplx(re, im)};
}

void write(std::ostringstream& os, const json& j, int indent, int level) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (level + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * level), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{' << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad << json(it.key()).dump() << (indent > 0 ? ": " : ":");
        write(os, it.value(), indent, level + 1);
      }
      os << nl << close_pad << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << '[' << nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ',' << nl;
        os << pad;
        write(os, j[i], indent, level + 1);
      }
      os << nl << close_pad << ']';
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      os << (std::isfinite(x) ? format_double(x) : "null");
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

json to_json(const TreeFunction& f) {
  json entries = json::array();
  for (const auto& [v, c] : f.nonzero_entries(f.radius())) entries.push_back(entry(v, c));
  return json{{"q", f.params().q()}, {"radius", f.radius()}, {"entries", entries}};
}

json to_json(const ConeFunction& F) {
  json entries = json::array();
  const auto anchors = enumerate_sphere(F.depth(), F.params());
  for (std::size_t r = 0; r < anchors.size(); ++r) entries.push_back(entry(anchors[r], F.at(static_cast<std::int64_t>(r))));
  return json{{"q", F.params().q()}, {"depth", F.depth()}, {"entries", entries}};
}

TreeFunction tree_function_from_json(const json& j) {
  const TreeParams params(require<int>(j, "q"));
  const int radius = require<int>(j, "radius");
  if (radius < 0) throw Error(ErrorKind::InvalidArgument, "radius must be >= 0");
  std::vector<std::pair<Vertex, cplx>> entries;
  for (const auto& e : require<json>(j, "entries")) entries.push_back(parse_entry(e, params));
  return TreeFunction::from_entries(params, radius, entries);
}

ConeFunction cone_function_from_json(const json& j) {
  const TreeParams params(require<int>(j, "q"));
  const int depth = require<int>(j, "depth");
  if (depth < 1) throw Error(ErrorKind::InvalidArgument, "cone depth must be >= 1");
  std::vector<cplx> values(static_cast<std::size_t>(sphere_size(depth, params)), 0.0);
  std::vector<bool> seen(values.size(), false);
  for (const auto& e : require<json>(j, "entries")) {
    const auto [v, c] = parse_entry(e, params);
    if (v.depth() != depth) throw Error(ErrorKind::InvalidArgument, "cone anchor depth differs from 'depth'");
    const auto r = static_cast<std::size_t>(sphere_rank(v, params));
    if (seen[r]) throw Error(ErrorKind::InvalidArgument, "duplicate cone anchor");
    seen[r] = true;
    values[r] = c;
  }
  return ConeFunction(params, depth, std::move(values));
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump_json(const json& j, int indent) {
  std::ostringstream os;
  write(os, j, indent, 0);
  return os.str();
}

}  // namespace treedyn
