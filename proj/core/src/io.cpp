#include "gdchfif/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace gdchfif {

namespace {

using json = nlohmann::json;

std::string at_index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

std::string member(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

void expect_object(const json& v, const std::string& path) {
  if (!v.is_object()) {
    throw Error(ErrorCode::SyntaxError, "expected an object", {}, path);
  }
}

void expect_array(const json& v, const std::string& path) {
  if (!v.is_array()) {
    throw Error(ErrorCode::SyntaxError, "expected an array", {}, path);
  }
}

void expect_keys(const json& obj, const std::string& path,
                 std::initializer_list<std::string_view> allowed) {
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw Error(ErrorCode::UnknownField, "unknown field '" + item.key() + "'",
                  {}, member(path, item.key()));
    }
  }
}

const json& require(const json& obj, const std::string& path,
                    std::string_view key) {
  auto it = obj.find(std::string(key));
  if (it == obj.end()) {
    throw Error(ErrorCode::MissingSection,
                "missing required field '" + std::string(key) + "'", {},
                member(path, key));
  }
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) {
    throw Error(ErrorCode::SyntaxError, "expected a number", {}, path);
  }
  return v.get<double>();
}

long long integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) {
    throw Error(ErrorCode::SyntaxError, "expected an integer", {}, path);
  }
  return v.get<long long>();
}

bool boolean(const json& v, const std::string& path) {
  if (!v.is_boolean()) {
    throw Error(ErrorCode::SyntaxError, "expected true or false", {}, path);
  }
  return v.get<bool>();
}

int vertex_label(const json& v, const std::string& path) {
  const long long id = integer(v, path);
  if (id < 1 || id > 1'000'000) {
    throw Error(ErrorCode::UnknownVertex,
                "vertex labels start at 1, got " + std::to_string(id), {}, path);
  }
  return static_cast<int>(id);
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text,
                                                    std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

DatasetEntry parse_dataset(const json& v, const std::string& path) {
  expect_object(v, path);
  expect_keys(v, path, {"vertex", "points"});
  DatasetEntry e;
  e.vertex = vertex_label(require(v, path, "vertex"), member(path, "vertex"));
  const std::string pts_path = member(path, "points");
  const json& pts = require(v, path, "points");
  expect_array(pts, pts_path);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string p = at_index(pts_path, i);
    expect_array(pts[i], p);
    if (pts[i].size() != 2 && pts[i].size() != 3) {
      throw Error(ErrorCode::SyntaxError, "a point is [x, y] or [x, y, z]", {},
                  p);
    }
    Point3 q;
    q.x = number(pts[i][0], at_index(p, 0));
    q.y = number(pts[i][1], at_index(p, 1));
    q.z = pts[i].size() == 3 ? number(pts[i][2], at_index(p, 2)) : q.y;
    e.points.push_back(q);
  }
  return e;
}

GraphEntry parse_graph(const json& v, const std::string& path) {
  expect_object(v, path);
  expect_keys(v, path, {"vertex", "sources"});
  GraphEntry e;
  e.vertex = vertex_label(require(v, path, "vertex"), member(path, "vertex"));
  const std::string src_path = member(path, "sources");
  const json& src = require(v, path, "sources");
  expect_array(src, src_path);
  for (std::size_t i = 0; i < src.size(); ++i) {
    e.sources.push_back(vertex_label(src[i], at_index(src_path, i)));
  }
  return e;
}

ParamsEntry parse_params(const json& v, const std::string& path) {
  expect_object(v, path);
  expect_keys(v, path, {"vertex", "maps"});
  ParamsEntry e;
  e.vertex = vertex_label(require(v, path, "vertex"), member(path, "vertex"));
  const std::string maps_path = member(path, "maps");
  const json& maps = require(v, path, "maps");
  expect_array(maps, maps_path);
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const std::string p = at_index(maps_path, i);
    expect_object(maps[i], p);
    expect_keys(maps[i], p, {"alpha", "beta", "gamma"});
    Scaling s;
    s.alpha = number(require(maps[i], p, "alpha"), member(p, "alpha"));
    s.beta = number(require(maps[i], p, "beta"), member(p, "beta"));
    s.gamma = number(require(maps[i], p, "gamma"), member(p, "gamma"));
    e.maps.push_back(s);
  }
  return e;
}

RenderSettings parse_render(const json& v, const std::string& path) {
  expect_object(v, path);
  expect_keys(v, path,
              {"width", "panel_height", "show_f2", "show_knots", "show_cloud",
               "cloud_max_points", "colors"});
  RenderSettings r;
  auto opt = [&](std::string_view key) -> const json* {
    auto it = v.find(std::string(key));
    return it == v.end() ? nullptr : &*it;
  };
  if (auto* w = opt("width")) r.width = static_cast<int>(integer(*w, member(path, "width")));
  if (auto* h = opt("panel_height")) {
    r.panel_height = static_cast<int>(integer(*h, member(path, "panel_height")));
  }
  if (auto* b = opt("show_f2")) r.show_f2 = boolean(*b, member(path, "show_f2"));
  if (auto* b = opt("show_knots")) r.show_knots = boolean(*b, member(path, "show_knots"));
  if (auto* b = opt("show_cloud")) r.show_cloud = boolean(*b, member(path, "show_cloud"));
  if (auto* m = opt("cloud_max_points")) {
    const long long n = integer(*m, member(path, "cloud_max_points"));
    if (n < 0) {
      throw Error(ErrorCode::SyntaxError, "must be non-negative", {},
                  member(path, "cloud_max_points"));
    }
    r.cloud_max_points = static_cast<std::size_t>(n);
  }
  if (auto* c = opt("colors")) {
    const std::string cp = member(path, "colors");
    expect_array(*c, cp);
    for (std::size_t i = 0; i < c->size(); ++i) {
      if (!(*c)[i].is_string()) {
        throw Error(ErrorCode::SyntaxError, "expected a string", {},
                    at_index(cp, i));
      }
      r.colors.push_back((*c)[i].get<std::string>());
    }
  }
  if (r.width < 100 || r.panel_height < 100) {
    throw Error(ErrorCode::SyntaxError, "canvas must be at least 100x100", {},
                path);
  }
  return r;
}

CoefficientOverride parse_override(const json& v, const std::string& path) {
  expect_object(v, path);
  expect_keys(v, path, {"vertex", "map", "field", "value"});
  CoefficientOverride o;
  o.vertex = vertex_label(require(v, path, "vertex"), member(path, "vertex"));
  const long long map = integer(require(v, path, "map"), member(path, "map"));
  if (map < 1) {
    throw Error(ErrorCode::SyntaxError, "map numbers start at 1", {},
                member(path, "map"));
  }
  o.map = static_cast<std::size_t>(map);
  const json& field = require(v, path, "field");
  static constexpr std::string_view kFields[] = {"a", "b", "c", "d", "e", "f"};
  if (!field.is_string() ||
      std::find(std::begin(kFields), std::end(kFields),
                field.get<std::string>()) == std::end(kFields)) {
    throw Error(ErrorCode::SyntaxError, "field must be one of a, b, c, d, e, f",
                {}, member(path, "field"));
  }
  o.field = field.get<std::string>();
  o.value = number(require(v, path, "value"), member(path, "value"));
  return o;
}

template <typename Entry, typename Parse>
std::vector<Entry> parse_section(const json& root, std::string_view key,
                                 Parse parse) {
  const std::string path{key};
  const json& arr = require(root, "", key);
  expect_array(arr, path);
  if (arr.empty()) {
    throw Error(ErrorCode::MissingSection, "section is empty", {}, path);
  }
  std::vector<Entry> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(parse(arr[i], at_index(path, i)));
  }
  return out;
}

// Position of each label 1..V within a section; rejects gaps and repeats.
template <typename Entry>
std::vector<std::size_t> order_by_label(const std::vector<Entry>& entries,
                                        std::size_t vertex_count,
                                        const std::string& section) {
  std::vector<std::size_t> pos(vertex_count, entries.size());
  if (entries.size() != vertex_count) {
    throw Error(ErrorCode::AssignmentLengthMismatch,
                "expected " + std::to_string(vertex_count) + " entries, got " +
                    std::to_string(entries.size()),
                {}, section);
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto label = static_cast<std::size_t>(entries[i].vertex);
    const std::string p = at_index(section, i) + ".vertex";
    if (label < 1 || label > vertex_count) {
      throw Error(ErrorCode::UnknownVertex,
                  "vertex " + std::to_string(label) + " has no dataset", {}, p);
    }
    if (pos[label - 1] != entries.size()) {
      throw Error(ErrorCode::StructuralMismatch,
                  "vertex " + std::to_string(label) + " appears twice", {}, p);
    }
    pos[label - 1] = i;
  }
  return pos;
}

// Library paths index vertices; documents may list entries in any order, so
// "section[r]..." is rewritten to the entry's position in the document.
std::string reanchor(const std::string& path, const std::string& section,
                     const std::vector<std::size_t>& positions) {
  const std::string head = section + "[";
  const auto close = path.find(']');
  if (path.rfind(head, 0) != 0 || close == std::string::npos) return path;
  const std::size_t r = std::stoul(path.substr(head.size(), close - head.size()));
  if (r >= positions.size()) return path;
  return at_index(section, positions[r]) + path.substr(close + 1);
}

std::string format_double(double v, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

ProblemDocument parse_problem(std::string_view text) {
  if (std::all_of(text.begin(), text.end(),
                  [](unsigned char c) { return std::isspace(c) != 0; })) {
    throw Error(ErrorCode::MissingSection, "document is empty", {}, "datasets");
  }
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_and_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw Error(ErrorCode::SyntaxError,
                "line " + std::to_string(line) + ", column " +
                    std::to_string(col) + ": " + e.what());
  }
  expect_object(root, "");
  expect_keys(root, "", {"datasets", "graph", "params", "render", "overrides"});

  ProblemDocument doc;
  doc.datasets = parse_section<DatasetEntry>(root, "datasets", parse_dataset);
  doc.graph = parse_section<GraphEntry>(root, "graph", parse_graph);
  doc.params = parse_section<ParamsEntry>(root, "params", parse_params);
  if (auto it = root.find("render"); it != root.end()) {
    doc.render = parse_render(*it, "render");
  }
  if (auto it = root.find("overrides"); it != root.end()) {
    expect_array(*it, "overrides");
    for (std::size_t i = 0; i < it->size(); ++i) {
      doc.overrides.push_back(
          parse_override((*it)[i], at_index("overrides", i)));
    }
  }
  return doc;
}

std::string serialize_problem(const ProblemDocument& doc) {
  json root = json::object();
  json datasets = json::array();
  for (const auto& d : doc.datasets) {
    json pts = json::array();
    for (const Point3& p : d.points) pts.push_back({p.x, p.y, p.z});
    datasets.push_back({{"vertex", d.vertex}, {"points", std::move(pts)}});
  }
  json graph = json::array();
  for (const auto& g : doc.graph) {
    graph.push_back({{"vertex", g.vertex}, {"sources", g.sources}});
  }
  json params = json::array();
  for (const auto& p : doc.params) {
    json maps = json::array();
    for (const Scaling& s : p.maps) {
      maps.push_back({{"alpha", s.alpha}, {"beta", s.beta}, {"gamma", s.gamma}});
    }
    params.push_back({{"vertex", p.vertex}, {"maps", std::move(maps)}});
  }
  root["datasets"] = std::move(datasets);
  root["graph"] = std::move(graph);
  root["params"] = std::move(params);
  if (doc.render) {
    const RenderSettings& r = *doc.render;
    root["render"] = {{"width", r.width},
                      {"panel_height", r.panel_height},
                      {"show_f2", r.show_f2},
                      {"show_knots", r.show_knots},
                      {"show_cloud", r.show_cloud},
                      {"cloud_max_points", r.cloud_max_points},
                      {"colors", r.colors}};
  }
  if (!doc.overrides.empty()) {
    json ov = json::array();
    for (const auto& o : doc.overrides) {
      ov.push_back({{"vertex", o.vertex},
                    {"map", o.map},
                    {"field", o.field},
                    {"value", o.value}});
    }
    root["overrides"] = std::move(ov);
  }
  return root.dump(2) + "\n";
}

ProblemDocument load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

ProblemInputs validate_problem(const ProblemDocument& doc) {
  const std::size_t v = doc.datasets.size();
  if (v == 0) {
    throw Error(ErrorCode::MissingSection, "no datasets", {}, "datasets");
  }
  const auto ds_pos = order_by_label(doc.datasets, v, "datasets");
  const auto g_pos = order_by_label(doc.graph, v, "graph");
  const auto p_pos = order_by_label(doc.params, v, "params");

  ProblemInputs in;
  in.graph.vertex_count = v;
  in.graph.sources.resize(v);
  for (std::size_t r = 0; r < v; ++r) {
    const std::size_t i = ds_pos[r];
    try {
      in.datasets.push_back(validate_dataset(doc.datasets[i].points,
                                             doc.datasets[i].vertex));
    } catch (const Error& e) {
      std::string p = at_index("datasets", i) + ".points";
      if (e.index()) p = at_index(p, *e.index());
      throw e.with_path(p);
    }
    const GraphEntry& g = doc.graph[g_pos[r]];
    for (std::size_t n = 0; n < g.sources.size(); ++n) {
      const auto label = static_cast<std::size_t>(g.sources[n]);
      if (label < 1 || label > v) {
        throw Error(ErrorCode::UnknownVertex,
                    "source vertex " + std::to_string(label) + " does not exist",
                    n, at_index(at_index("graph", g_pos[r]) + ".sources", n));
      }
      in.graph.sources[r].push_back(label - 1);
    }
  }
  try {
    in.graph = validate_graph(in.graph, in.datasets);
  } catch (const Error& e) {
    throw e.with_path(reanchor(e.path(), "graph", g_pos));
  }

  in.params.resize(v);
  for (std::size_t r = 0; r < v; ++r) in.params[r] = doc.params[p_pos[r]].maps;
  try {
    validate_scaling(in.params, in.graph);
  } catch (const Error& e) {
    throw e.with_path(reanchor(e.path(), "params", p_pos));
  }
  return in;
}

GDIFSystem build_problem(const ProblemDocument& doc,
                         const BuildOptions& options) {
  ProblemInputs in = validate_problem(doc);
  GDIFSystem sys = build_system(std::move(in.datasets), in.graph, in.params,
                                options);
  if (doc.overrides.empty()) return sys;

  auto maps = sys.maps();
  for (std::size_t i = 0; i < doc.overrides.size(); ++i) {
    const CoefficientOverride& o = doc.overrides[i];
    const std::string path = at_index("overrides", i);
    const auto r = static_cast<std::size_t>(o.vertex);
    if (r < 1 || r > maps.size()) {
      throw Error(ErrorCode::UnknownVertex, "no such vertex", {},
                  path + ".vertex");
    }
    if (o.map < 1 || o.map > maps[r - 1].size()) {
      throw Error(ErrorCode::InvalidArgument, "no such map", {}, path + ".map");
    }
    AffineMap3& m = maps[r - 1][o.map - 1];
    switch (o.field.front()) {
      case 'a': m.a = o.value; break;
      case 'b': m.b = o.value; break;
      case 'c': m.c = o.value; break;
      case 'd': m.d = o.value; break;
      case 'e': m.e = o.value; break;
      case 'f': m.f = o.value; break;
      default:
        throw Error(ErrorCode::SyntaxError, "bad field", {}, path + ".field");
    }
  }
  return GDIFSystem::assemble_unchecked(sys.datasets(), sys.graph(),
                                        std::move(maps));
}

void write_coefficients(std::ostream& out, const GDIFSystem& system,
                        TableFormat format) {
  if (format == TableFormat::Csv) {
    out << "r,n,source,a,b,c,d,e,f,alpha,beta,gamma\n";
  } else {
    char head[256];
    std::snprintf(head, sizeof head,
                  "%3s %3s %6s %13s %13s %13s %13s %13s %13s %9s %9s %9s\n",
                  "r", "n", "source", "a", "b", "c", "d", "e", "f", "alpha",
                  "beta", "gamma");
    out << head;
  }
  for (const auto& row : system.maps()) {
    for (const AffineMap3& m : row) {
      const int r = system.dataset(m.target).vertex_id();
      const int s = system.dataset(m.source).vertex_id();
      if (format == TableFormat::Csv) {
        out << r << ',' << m.subinterval << ',' << s;
        for (double v : {m.a, m.b, m.c, m.d, m.e, m.f, m.alpha, m.beta, m.gamma}) {
          out << ',' << format_double(v, "%.17g");
        }
        out << '\n';
      } else {
        char line[256];
        std::snprintf(line, sizeof line,
                      "%3d %3zu %6d %13.6g %13.6g %13.6g %13.6g %13.6g %13.6g "
                      "%9.4g %9.4g %9.4g\n",
                      r, m.subinterval, s, m.a, m.b, m.c, m.d, m.e, m.f,
                      m.alpha, m.beta, m.gamma);
        out << line;
      }
    }
  }
}

void write_samples_csv(std::ostream& out, const GDIFSystem& system,
                       const FunctionList& functions) {
  out << "vertex,x,f1,f2\n";
  for (const SampledFunction& s : functions) {
    const int label = system.dataset(s.vertex).vertex_id();
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
      out << label << ',' << format_double(s.grid[i], "%.17g") << ','
          << format_double(s.f1[i], "%.17g") << ','
          << format_double(s.f2[i], "%.17g") << '\n';
    }
  }
}

void write_cloud_csv(std::ostream& out, const GDIFSystem& system,
                     const VertexSets& sets) {
  out << "vertex,x,y,z\n";
  for (const PointSet3& s : sets) {
    const int label = system.dataset(s.vertex).vertex_id();
    for (const Point3& p : s.points) {
      out << label << ',' << format_double(p.x, "%.17g") << ','
          << format_double(p.y, "%.17g") << ',' << format_double(p.z, "%.17g")
          << '\n';
    }
  }
}

}  // namespace gdchfif
