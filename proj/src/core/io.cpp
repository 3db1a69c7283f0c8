/* Copyright 2026 The SSG Embedding Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "core/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include "core/error.hpp"

namespace ssg::io {

namespace {

[[noreturn]] void parse_error(const std::string& where, const std::string& what) {
  fail(ErrorKind::Parse, where + ": " + what);
}

template <class T>
T field(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) parse_error(where, std::string("missing field '") + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    parse_error(where, std::string("field '") + key + "': " + e.what());
  }
}

// Converts JSON type errors raised inside fn into Parse errors located at `where`.
template <class Fn>
auto json_guard(const std::string& where, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    parse_error(where, e.what());
  }
}

// Hash header shared by every JSON artifact.
std::string hash_of(const json& j) { return j.is_object() ? j.value("config_hash", std::string()) : std::string(); }

std::string read_comment_hash(const std::string& first_line) {
  const std::string prefix = "# config_hash=";
  if (first_line.rfind(prefix, 0) == 0) return first_line.substr(prefix.size());
  return {};
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& text, const std::string& where) {
  double v = 0.0;
  const char* b = text.data();
  const char* e = b + text.size();
  while (b < e && *b == ' ') ++b;
  while (e > b && e[-1] == ' ') --e;
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e) parse_error(where, "not a number: '" + text + "'");
  return v;
}

long long parse_int(const std::string& text, const std::string& where) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) parse_error(where, "not an integer: '" + text + "'");
  return v;
}

void check_csv_safe(const std::string& s, const char* what) {
  require(s.find_first_of(",\n\r") == std::string::npos, ErrorKind::InvariantViolation,
          std::string(what) + " '" + s + "' contains a CSV separator");
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::Io, "cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), ErrorKind::Io, "cannot write " + path.string());
    out << text;
    out.flush();
    require(static_cast<bool>(out), ErrorKind::Io, "write failed for " + path.string());
  }
  fs::rename(tmp, path);
}

json read_json(const fs::path& path) {
  const std::string text = read_text(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    parse_error(path.string(), e.what());
  }
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(1) + "\n"); }

// ---- lane maps ------------------------------------------------------------------

json map_to_json(const LaneMap& map) {
  json lanes = json::array();
  for (const auto& lane : map.lanes()) {
    json pts = json::array();
    for (auto p : lane.centerline()) pts.push_back({p.x, p.y});
    lanes.push_back({{"id", lane.id()}, {"width", lane.width()}, {"centerline", pts}});
  }
  json rels = json::array();
  for (const auto& r : map.relations()) {
    json jr = {{"kind", to_string(r.kind)}, {"a", r.a}, {"b", r.b}};
    if (r.intersection_arclen_a) jr["s_a"] = *r.intersection_arclen_a;
    if (r.intersection_arclen_b) jr["s_b"] = *r.intersection_arclen_b;
    rels.push_back(jr);
  }
  return {{"id", map.id()}, {"lanes", lanes}, {"relations", rels}};
}

namespace {

LaneMap map_from_json_impl(const json& j, const std::string& fallback_id) {
  const std::string where = "map '" + fallback_id + "'";
  if (!j.is_object()) parse_error(where, "expected an object");
  const std::string id = j.value("id", fallback_id);
  std::vector<Lane> lanes;
  const auto& jl = field<json>(j, "lanes", where);
  for (std::size_t i = 0; i < jl.size(); ++i) {
    const std::string lw = where + " lane #" + std::to_string(i);
    const auto lane_id = field<std::string>(jl[i], "id", lw);
    std::vector<Vec2> pts;
    for (const auto& p : field<json>(jl[i], "centerline", lw)) {
      if (!p.is_array() || p.size() != 2) parse_error(lw, "centerline points must be [x, y]");
      pts.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    try {
      lanes.emplace_back(lane_id, std::move(pts), field<double>(jl[i], "width", lw));
    } catch (const Error& e) {
      fail(e.kind(), lw + " ('" + lane_id + "'): " + e.what());
    }
  }
  std::vector<LaneRelation> rels;
  if (j.contains("relations")) {
    const auto& jr = j["relations"];
    for (std::size_t i = 0; i < jr.size(); ++i) {
      const std::string rw = where + " relation #" + std::to_string(i);
      LaneRelation r;
      try {
        r.kind = relation_kind_from_string(field<std::string>(jr[i], "kind", rw));
      } catch (const Error& e) {
        fail(ErrorKind::Parse, rw + ": " + e.what());
      }
      r.a = field<std::string>(jr[i], "a", rw);
      r.b = field<std::string>(jr[i], "b", rw);
      if (jr[i].contains("s_a")) r.intersection_arclen_a = field<double>(jr[i], "s_a", rw);
      if (jr[i].contains("s_b")) r.intersection_arclen_b = field<double>(jr[i], "s_b", rw);
      rels.push_back(std::move(r));
    }
  }
  try {
    return LaneMap(id, std::move(lanes), std::move(rels));
  } catch (const Error& e) {
    fail(e.kind(), where + ": " + e.what());
  }
}

}  // namespace

LaneMap map_from_json(const json& j, const std::string& fallback_id) {
  return json_guard("map '" + fallback_id + "'", [&] { return map_from_json_impl(j, fallback_id); });
}

LaneMap load_map(const fs::path& path) { return map_from_json(read_json(path), path.stem().string()); }

void save_map(const fs::path& path, const LaneMap& map) { write_json(path, map_to_json(map)); }

std::map<std::string, LaneMap> load_maps(const std::vector<fs::path>& paths) {
  std::vector<fs::path> files;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> in_dir;
      for (const auto& e : fs::directory_iterator(p))
        if (e.is_regular_file() && e.path().extension() == ".json") in_dir.push_back(e.path());
      std::sort(in_dir.begin(), in_dir.end());
      files.insert(files.end(), in_dir.begin(), in_dir.end());
    } else {
      files.push_back(p);
    }
  }
  std::map<std::string, LaneMap> out;
  for (const auto& f : files) {
    LaneMap m = load_map(f);
    const std::string id = m.id();
    require(!out.count(id), ErrorKind::Parse, "duplicate map id '" + id + "' in " + f.string());
    out.emplace(id, std::move(m));
  }
  return out;
}

// ---- scenes and graphs ------------------------------------------------------------

json scene_to_json(const TrafficScene& scene) {
  json parts = json::array();
  for (const auto& p : scene.participants)
    parts.push_back({{"id", p.id},
                     {"x", p.position.x},
                     {"y", p.position.y},
                     {"speed", p.speed},
                     {"heading", p.heading},
                     {"class", to_string(p.object_class)}});
  return {{"scene_id", scene.scene_id},
          {"location_label", scene.location_label},
          {"map_ref", scene.map_ref},
          {"participants", parts}};
}

namespace {

TrafficScene scene_from_json_impl(const json& j) {
  TrafficScene s;
  s.scene_id = field<std::string>(j, "scene_id", "scene");
  const std::string where = "scene '" + s.scene_id + "'";
  s.location_label = field<std::string>(j, "location_label", where);
  s.map_ref = field<std::string>(j, "map_ref", where);
  for (const auto& jp : field<json>(j, "participants", where)) {
    TrafficParticipant p;
    p.id = field<std::string>(jp, "id", where);
    const std::string pw = where + " participant '" + p.id + "'";
    p.position = {field<double>(jp, "x", pw), field<double>(jp, "y", pw)};
    p.speed = field<double>(jp, "speed", pw);
    p.heading = field<double>(jp, "heading", pw);
    try {
      p.object_class = object_class_from_string(field<std::string>(jp, "class", pw));
    } catch (const Error& e) {
      fail(ErrorKind::Parse, pw + ": " + e.what());
    }
    s.participants.push_back(std::move(p));
  }
  return s;
}

}  // namespace

TrafficScene scene_from_json(const json& j) {
  return json_guard(std::string("scene"), [&] { return scene_from_json_impl(j); });
}

SceneFile load_scenes(const fs::path& path) {
  const json j = read_json(path);
  require(j.is_object(), ErrorKind::Parse, path.string() + ": expected a JSON object");
  SceneFile f;
  f.config_hash = hash_of(j);
  const auto items = field<json>(j, "scenes", path.string());
  require(items.is_array(), ErrorKind::Parse, path.string() + ": 'scenes' must be an array");
  for (std::size_t i = 0; i < items.size(); ++i) {
    try {
      f.scenes.push_back(scene_from_json(items[i]));
    } catch (const Error& e) {
      fail(e.kind(), path.string() + ": scenes[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return f;
}

void save_scenes(const fs::path& path, const SceneFile& file) {
  json arr = json::array();
  for (const auto& s : file.scenes) arr.push_back(scene_to_json(s));
  write_json(path, {{"config_hash", file.config_hash}, {"scenes", arr}});
}

json graph_to_json(const SceneGraph& graph) {
  json nodes = json::array();
  json ids = json::array();
  for (const auto& n : graph.nodes) {
    nodes.push_back(n.features);
    ids.push_back(n.participant_id);
  }
  json edges = json::array();
  for (const auto& e : graph.edges) {
    json row = {e.origin, e.target};
    for (double f : e.features) row.push_back(f);
    edges.push_back(row);
  }
  return {{"scene_id", graph.scene_id},
          {"location_label", graph.location_label},
          {"node_ids", ids},
          {"nodes", nodes},
          {"edges", edges}};
}

namespace {

SceneGraph graph_from_json_impl(const json& j) {
  SceneGraph g;
  g.scene_id = field<std::string>(j, "scene_id", "graph");
  const std::string where = "graph '" + g.scene_id + "'";
  g.location_label = field<std::string>(j, "location_label", where);
  const auto& nodes = field<json>(j, "nodes", where);
  const json ids = j.value("node_ids", json::array());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!nodes[i].is_array() || nodes[i].size() != kNodeFeatureWidth)
      parse_error(where, "node #" + std::to_string(i) + " must have 5 features");
    GraphNode n;
    n.participant_id = i < ids.size() ? ids[i].get<std::string>() : std::to_string(i);
    for (std::size_t k = 0; k < kNodeFeatureWidth; ++k) n.features[k] = nodes[i][k].get<double>();
    g.nodes.push_back(std::move(n));
  }
  const auto& edges = field<json>(j, "edges", where);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& row = edges[i];
    if (!row.is_array() || row.size() != 2 + kEdgeFeatureWidth)
      parse_error(where, "edge #" + std::to_string(i) + " must be [origin, target, 9 features]");
    GraphEdge e;
    e.origin = row[0].get<std::size_t>();
    e.target = row[1].get<std::size_t>();
    if (e.origin >= g.nodes.size() || e.target >= g.nodes.size() || e.origin == e.target)
      parse_error(where, "edge #" + std::to_string(i) + " has invalid endpoints");
    for (std::size_t k = 0; k < kEdgeFeatureWidth; ++k) e.features[k] = row[2 + k].get<double>();
    g.edges.push_back(e);
  }
  return g;
}

}  // namespace

SceneGraph graph_from_json(const json& j) {
  return json_guard(std::string("graph"), [&] { return graph_from_json_impl(j); });
}

GraphFile load_graphs(const fs::path& path) {
  const json j = read_json(path);
  require(j.is_object(), ErrorKind::Parse, path.string() + ": expected a JSON object");
  GraphFile f;
  f.config_hash = hash_of(j);
  const auto items = field<json>(j, "graphs", path.string());
  require(items.is_array(), ErrorKind::Parse, path.string() + ": 'graphs' must be an array");
  for (std::size_t i = 0; i < items.size(); ++i) {
    try {
      f.graphs.push_back(graph_from_json(items[i]));
    } catch (const Error& e) {
      fail(e.kind(), path.string() + ": graphs[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return f;
}

void save_graphs(const fs::path& path, const GraphFile& file) {
  json arr = json::array();
  for (const auto& g : file.graphs) arr.push_back(graph_to_json(g));
  write_json(path, {{"config_hash", file.config_hash}, {"graphs", arr}});
}

// ---- checkpoints ----------------------------------------------------------------------

json matrix_to_json(const nn::Matrix& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

namespace {

nn::Matrix matrix_from_json_impl(const json& j) {
  const auto rows = field<Eigen::Index>(j, "rows", "tensor");
  const auto cols = field<Eigen::Index>(j, "cols", "tensor");
  const auto& data = field<json>(j, "data", "tensor");
  if (rows < 0 || cols < 0 || static_cast<Eigen::Index>(data.size()) != rows * cols)
    parse_error("tensor", "data length does not match shape");
  nn::Matrix m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = data[k++].get<double>();
  if (!m.allFinite()) parse_error("tensor", "non-finite entry");
  return m;
}

}  // namespace

nn::Matrix matrix_from_json(const json& j) {
  return json_guard(std::string("tensor"), [&] { return matrix_from_json_impl(j); });
}

json checkpoint_to_json(const Checkpoint& c) {
  const auto& cfg = c.params.config;
  json tensors = json::object();
  std::vector<std::string> names;
  c.params.for_each_tensor([&](const std::string& name, const nn::Matrix& m) {
    tensors[name] = matrix_to_json(m);
    names.push_back(name);
  });
  json j = {{"version", kCheckpointVersion},
            {"config_hash", c.config_hash},
            {"epoch", c.epoch},
            {"encoder",
             {{"hidden", cfg.hidden},
              {"embedding", cfg.embedding},
              {"head_hidden", cfg.head_hidden},
              {"leaky_slope", cfg.leaky_slope},
              {"gnn_dropout", cfg.gnn_dropout}}},
            {"tensors", tensors}};
  if (c.adam) {
    const auto& a = *c.adam;
    json m = json::object(), v = json::object();
    for (std::size_t i = 0; i < names.size(); ++i) {
      m[names[i]] = matrix_to_json(a.first_moment[i]);
      v[names[i]] = matrix_to_json(a.second_moment[i]);
    }
    j["adam"] = {{"learning_rate", a.config.learning_rate},
                 {"beta1", a.config.beta1},
                 {"beta2", a.config.beta2},
                 {"epsilon", a.config.epsilon},
                 {"step", a.step},
                 {"first_moment", m},
                 {"second_moment", v}};
  }
  return j;
}

namespace {

Checkpoint checkpoint_from_json_impl(const json& j) {
  const std::string where = "checkpoint";
  const int version = field<int>(j, "version", where);
  if (version != kCheckpointVersion) parse_error(where, "unsupported version " + std::to_string(version));
  Checkpoint c;
  c.config_hash = j.value("config_hash", std::string());
  c.epoch = field<std::size_t>(j, "epoch", where);
  const auto& je = field<json>(j, "encoder", where);
  EncoderConfig cfg;
  cfg.hidden = field<int>(je, "hidden", where);
  cfg.embedding = field<int>(je, "embedding", where);
  cfg.head_hidden = field<std::vector<int>>(je, "head_hidden", where);
  cfg.leaky_slope = field<double>(je, "leaky_slope", where);
  cfg.gnn_dropout = field<double>(je, "gnn_dropout", where);
  c.params = EncoderParams::init(cfg, 0);
  const auto& tensors = field<json>(j, "tensors", where);
  std::vector<std::string> names;
  c.params.for_each_tensor([&](const std::string& name, nn::Matrix& m) {
    auto it = tensors.find(name);
    if (it == tensors.end()) parse_error(where, "missing tensor '" + name + "'");
    nn::Matrix loaded = matrix_from_json(*it);
    if (loaded.rows() != m.rows() || loaded.cols() != m.cols())
      fail(ErrorKind::ShapeMismatch, where + ": tensor '" + name + "' has the wrong shape");
    m = std::move(loaded);
    names.push_back(name);
  });
  if (tensors.size() != names.size()) parse_error(where, "unexpected extra tensors");
  if (j.contains("adam")) {
    const auto& ja = j["adam"];
    nn::AdamState a;
    a.config.learning_rate = field<double>(ja, "learning_rate", where);
    a.config.beta1 = field<double>(ja, "beta1", where);
    a.config.beta2 = field<double>(ja, "beta2", where);
    a.config.epsilon = field<double>(ja, "epsilon", where);
    a.step = field<std::uint64_t>(ja, "step", where);
    const auto& m = field<json>(ja, "first_moment", where);
    const auto& v = field<json>(ja, "second_moment", where);
    for (const auto& name : names) {
      if (!m.contains(name) || !v.contains(name)) parse_error(where, "missing ADAM moment for '" + name + "'");
      a.first_moment.push_back(matrix_from_json(m[name]));
      a.second_moment.push_back(matrix_from_json(v[name]));
    }
    c.adam = std::move(a);
  }
  return c;
}

}  // namespace

Checkpoint checkpoint_from_json(const json& j) {
  return json_guard(std::string("checkpoint"), [&] { return checkpoint_from_json_impl(j); });
}

Checkpoint load_checkpoint(const fs::path& path) {
  try {
    return checkpoint_from_json(read_json(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Io) throw;
    fail(e.kind(), path.string() + ": " + e.what());
  }
}

void save_checkpoint(const fs::path& path, const Checkpoint& c) { write_json(path, checkpoint_to_json(c)); }

// ---- tracks CSV ---------------------------------------------------------------------

namespace {

// psi_rad is optional; headings fall back to the velocity direction.
const char* const kTrackColumns[] = {"track_id", "frame_id", "timestamp_ms", "agent_type",
                                     "x",        "y",        "vx",           "vy"};

}  // namespace

std::vector<TrackRow> read_tracks(std::istream& in, const std::string& source_name) {
  std::string line;
  std::size_t line_no = 0;
  std::map<std::string, std::size_t> col;
  std::vector<TrackRow> rows;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cells = split_csv(line);
    const std::string where = source_name + ":" + std::to_string(line_no);
    if (!have_header) {
      for (std::size_t i = 0; i < cells.size(); ++i) col[cells[i]] = i;
      for (const char* c : kTrackColumns)
        if (!col.count(c)) parse_error(where, std::string("missing column '") + c + "'");
      have_header = true;
      continue;
    }
    auto cell = [&](const char* name) -> const std::string& {
      const std::size_t i = col.at(name);
      if (i >= cells.size()) parse_error(where, "too few columns");
      return cells[i];
    };
    TrackRow r;
    r.line = line_no;
    r.track_id = cell("track_id");
    if (r.track_id.empty()) parse_error(where, "empty track_id");
    r.frame_id = parse_int(cell("frame_id"), where);
    r.timestamp_ms = parse_int(cell("timestamp_ms"), where);
    r.agent_type = cell("agent_type");
    r.x = parse_double(cell("x"), where);
    r.y = parse_double(cell("y"), where);
    r.vx = parse_double(cell("vx"), where);
    r.vy = parse_double(cell("vy"), where);
    if (col.count("psi_rad") && !cell("psi_rad").empty()) r.psi_rad = parse_double(cell("psi_rad"), where);
    rows.push_back(std::move(r));
  }
  if (!have_header) parse_error(source_name, "missing header");
  return rows;
}

std::vector<TrackRow> read_tracks(const fs::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::Io, "cannot open " + path.string());
  return read_tracks(in, path.string());
}

void write_tracks(std::ostream& out, const std::vector<TrackRow>& rows) {
  out << "track_id,frame_id,timestamp_ms,agent_type,x,y,vx,vy,psi_rad\n";
  for (const auto& r : rows) {
    check_csv_safe(r.track_id, "track id");
    out << r.track_id << ',' << r.frame_id << ',' << r.timestamp_ms << ',' << r.agent_type << ','
        << format_double(r.x) << ',' << format_double(r.y) << ',' << format_double(r.vx) << ','
        << format_double(r.vy) << ',' << (r.psi_rad ? format_double(*r.psi_rad) : std::string()) << '\n';
  }
}

std::vector<TrafficScene> snapshot_scenes(const std::vector<TrackRow>& rows, const std::string& location,
                                          const std::string& map_ref, std::size_t stride,
                                          const std::string& source_name) {
  require(stride >= 1, ErrorKind::Usage, "frame stride must be >= 1");
  if (rows.empty()) return {};
  long long first = rows.front().frame_id;
  for (const auto& r : rows) first = std::min(first, r.frame_id);
  std::map<long long, std::vector<const TrackRow*>> frames;
  for (const auto& r : rows)
    if ((r.frame_id - first) % static_cast<long long>(stride) == 0) frames[r.frame_id].push_back(&r);

  std::vector<TrafficScene> scenes;
  for (const auto& [frame, members] : frames) {
    TrafficScene s;
    s.scene_id = location + "_f" + std::to_string(frame);
    s.location_label = location;
    s.map_ref = map_ref;
    std::set<std::string> seen;
    for (const TrackRow* r : members) {
      const std::string where = source_name + ":" + std::to_string(r->line);
      if (!seen.insert(r->track_id).second)
        parse_error(where, "track '" + r->track_id + "' appears twice in frame " + std::to_string(frame));
      TrafficParticipant p;
      p.id = r->track_id;
      p.position = {r->x, r->y};
      p.speed = std::hypot(r->vx, r->vy);
      p.heading = wrap_angle(r->psi_rad ? *r->psi_rad : std::atan2(r->vy, r->vx));
      try {
        p.object_class = object_class_from_string(r->agent_type);
        validate(p);
      } catch (const Error& e) {
        fail(ErrorKind::Parse, where + ": " + e.what());
      }
      s.participants.push_back(std::move(p));
    }
    scenes.push_back(std::move(s));
  }
  return scenes;
}

std::vector<TrackRow> scenes_to_tracks(const std::vector<TrafficScene>& scenes, long long first_frame,
                                       std::size_t stride) {
  std::vector<TrackRow> rows;
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    const long long frame = first_frame + static_cast<long long>(i * stride);
    for (const auto& p : scenes[i].participants) {
      TrackRow r;
      r.track_id = scenes[i].scene_id + ":" + p.id;
      r.frame_id = frame;
      r.timestamp_ms = frame * 100;
      r.agent_type = to_string(p.object_class);
      r.x = p.position.x;
      r.y = p.position.y;
      r.vx = p.speed * std::cos(p.heading);
      r.vy = p.speed * std::sin(p.heading);
      r.psi_rad = p.heading;
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

// ---- embeddings and histories ----------------------------------------------------------

EmbeddingTable load_embeddings(const fs::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::Io, "cannot open " + path.string());
  EmbeddingTable t;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t dims = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (t.config_hash.empty()) t.config_hash = read_comment_hash(line);
      continue;
    }
    const std::string where = path.string() + ":" + std::to_string(line_no);
    auto cells = split_csv(line);
    if (!have_header) {
      if (cells.size() < 3 || cells[0] != "scene_id" || cells[1] != "location_label")
        parse_error(where, "expected header scene_id,location_label,e0,...");
      dims = cells.size() - 2;
      have_header = true;
      continue;
    }
    if (cells.size() != dims + 2) parse_error(where, "expected " + std::to_string(dims + 2) + " columns");
    Embedding e(static_cast<Eigen::Index>(dims));
    for (std::size_t k = 0; k < dims; ++k) e[static_cast<Eigen::Index>(k)] = parse_double(cells[k + 2], where);
    t.scene_ids.push_back(cells[0]);
    t.location_labels.push_back(cells[1]);
    t.embeddings.push_back(std::move(e));
  }
  if (!have_header) parse_error(path.string(), "missing header");
  return t;
}

void save_embeddings(const fs::path& path, const EmbeddingTable& table) {
  std::ostringstream out;
  out << "# config_hash=" << table.config_hash << '\n';
  const Eigen::Index dims = table.embeddings.empty() ? 0 : table.embeddings.front().size();
  out << "scene_id,location_label";
  for (Eigen::Index k = 0; k < dims; ++k) out << ",e" << k;
  out << '\n';
  for (std::size_t i = 0; i < table.embeddings.size(); ++i) {
    check_csv_safe(table.scene_ids[i], "scene id");
    check_csv_safe(table.location_labels[i], "location label");
    out << table.scene_ids[i] << ',' << table.location_labels[i];
    for (Eigen::Index k = 0; k < dims; ++k) out << ',' << format_double(table.embeddings[i][k]);
    out << '\n';
  }
  write_text(path, out.str());
}

void save_loss_history(const fs::path& path, const std::vector<EpochRecord>& history,
                       const std::string& config_hash) {
  std::ostringstream out;
  out << "# config_hash=" << config_hash << '\n';
  out << "epoch,train_loss,val_loss,val_accuracy\n";
  for (const auto& r : history)
    out << r.epoch << ',' << format_double(r.train_loss) << ',' << format_double(r.val_loss) << ','
        << format_double(r.val_accuracy) << '\n';
  write_text(path, out.str());
}

}  // namespace ssg::io
