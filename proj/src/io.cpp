#include "tricat/io.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

namespace tricat::io {

using nlohmann::json;

FormatError::FormatError(const std::string& msg, std::size_t l, std::size_t c)
    : std::runtime_error(l > 0 ? "line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg : msg),
      line(l),
      column(c) {}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw FormatError((path.empty() ? std::string("/") : path) + ": " + msg);
}

std::string child(const std::string& path, const std::string& key) {
  std::string escaped;
  for (char ch : key) {
    if (ch == '~') {
      escaped += "~0";
    } else if (ch == '/') {
      escaped += "~1";
    } else {
      escaped += ch;
    }
  }
  return path + "/" + escaped;
}

std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

void only_keys(const json& j, const std::string& path, const std::set<std::string>& keys) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [k, v] : j.items()) {
    if (!keys.count(k)) fail(child(path, k), "unknown key");
  }
}

const json& need(const json& j, const std::string& path, const std::string& key) {
  if (!j.contains(key)) fail(path, "missing key \"" + key + "\"");
  return j.at(key);
}

const json& need_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::size_t as_size(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) fail(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

class Reader {
 public:
  explicit Reader(const json& doc) : doc_(doc) {}

  CategoryFile read() {
    only_keys(doc_, "", {"format", "field", "indecomposables", "hom", "compose", "identity", "shift", "triangles",
                         "subcats", "quotient"});
    CategoryFile out;
    if (doc_.contains("format")) {
      out.format = static_cast<int>(as_size(doc_.at("format"), "/format"));
      if (out.format != 1) fail("/format", "unsupported format version " + std::to_string(out.format));
    }
    read_field();
    read_names();
    read_hom();
    read_compose();
    read_identity();
    read_shift();
    try {
      out.category = std::make_shared<const Category>(std::move(p_));
    } catch (const std::invalid_argument& e) {
      fail("", e.what());
    }
    c_ = out.category.get();
    if (doc_.contains("triangles")) {
      const auto& arr = need_array(doc_.at("triangles"), "/triangles");
      for (std::size_t i = 0; i < arr.size(); ++i) out.triangles.push_back(read_triangle(arr[i], child("/triangles", i)));
    }
    if (doc_.contains("subcats")) {
      const auto& sc = doc_.at("subcats");
      if (!sc.is_object()) fail("/subcats", "expected an object");
      for (const auto& [k, v] : sc.items()) {
        const std::string path = child("/subcats", k);
        std::vector<int> members;
        for (const auto& n : names_of(v, path)) members.push_back(n);
        out.subcats[k] = Subcat(std::move(members));
      }
    }
    if (doc_.contains("quotient")) {
      const auto& q = doc_.at("quotient");
      only_keys(q, "/quotient", {"base_indecomposables", "z", "d", "kept", "projection", "sigma_table"});
      out.quotient = q;
    }
    return out;
  }

 private:
  void read_field() {
    const auto& f = need(doc_, "", "field");
    only_keys(f, "/field", {"kind", "p"});
    const auto& kind = need(f, "/field", "kind");
    if (!kind.is_string()) fail("/field/kind", "expected a string");
    if (kind == "rationals") fail("/field/kind", "rational coefficients are not supported; use a prime field");
    if (kind != "prime") fail("/field/kind", "unknown field kind " + kind.dump());
    const auto p = as_size(need(f, "/field", "p"), "/field/p");
    if (!Field::is_prime(static_cast<std::uint32_t>(p)) || p > 65521) fail("/field/p", "expected a prime below 2^16");
    p_.field = Field(static_cast<std::uint32_t>(p));
  }

  void read_names() {
    const auto& arr = need_array(need(doc_, "", "indecomposables"), "/indecomposables");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = child("/indecomposables", i);
      if (!arr[i].is_string()) fail(path, "expected a string");
      const auto name = arr[i].get<std::string>();
      if (name.empty() || name.find('|') != std::string::npos) fail(path, "names must be non-empty and free of '|'");
      if (index_.count(name)) fail(path, "duplicate name " + name);
      index_[name] = static_cast<int>(i);
      p_.names.push_back(name);
    }
    const auto n = p_.names.size();
    p_.hom_dim.assign(n, std::vector<std::size_t>(n, 0));
    p_.basis_names.assign(n, std::vector<std::vector<std::string>>(n));
    p_.comp.resize(n * n * n);
    p_.identity.resize(n);
    p_.shift.on_objects.resize(n);
    p_.shift.on_homs.assign(n, std::vector<Mat>(n));
  }

  int name_index(const json& j, const std::string& path) const {
    if (!j.is_string()) fail(path, "expected an indecomposable name");
    auto it = index_.find(j.get<std::string>());
    if (it == index_.end()) fail(path, "unknown indecomposable " + j.dump());
    return it->second;
  }

  std::vector<int> names_of(const json& j, const std::string& path) const {
    need_array(j, path);
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(name_index(j[i], child(path, i)));
    return out;
  }

  std::vector<std::size_t> split_key(const std::string& key, std::size_t parts, const std::string& path) const {
    std::vector<std::size_t> out;
    std::size_t start = 0;
    while (true) {
      const auto bar = key.find('|', start);
      const auto part = key.substr(start, bar == std::string::npos ? std::string::npos : bar - start);
      auto it = index_.find(part);
      if (it == index_.end()) fail(path, "unknown indecomposable \"" + part + "\" in key");
      out.push_back(static_cast<std::size_t>(it->second));
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    if (out.size() != parts) fail(path, "expected a key naming " + std::to_string(parts) + " indecomposables");
    return out;
  }

  Scalar scalar(const json& j, const std::string& path) const {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    const auto p = static_cast<std::int64_t>(p_.field.characteristic());
    auto v = j.get<std::int64_t>() % p;
    if (v < 0) v += p;
    return static_cast<Scalar>(v);
  }

  Vec vec(const json& j, std::size_t len, const std::string& path) const {
    need_array(j, path);
    if (j.size() != len) fail(path, "expected " + std::to_string(len) + " coordinates, got " + std::to_string(j.size()));
    Vec out;
    for (std::size_t i = 0; i < len; ++i) out.push_back(scalar(j[i], child(path, i)));
    return out;
  }

  void read_hom() {
    if (!doc_.contains("hom")) return;
    const auto& h = doc_.at("hom");
    if (!h.is_object()) fail("/hom", "expected an object");
    for (const auto& [k, v] : h.items()) {
      const std::string path = child("/hom", k);
      const auto xy = split_key(k, 2, path);
      only_keys(v, path, {"dim", "basis_names"});
      const auto dim = as_size(need(v, path, "dim"), child(path, "dim"));
      p_.hom_dim[xy[0]][xy[1]] = dim;
      if (v.contains("basis_names")) {
        const auto& bn = need_array(v.at("basis_names"), child(path, "basis_names"));
        if (bn.size() != dim) fail(child(path, "basis_names"), "expected " + std::to_string(dim) + " names");
        for (const auto& s : bn) {
          if (!s.is_string()) fail(child(path, "basis_names"), "expected strings");
          p_.basis_names[xy[0]][xy[1]].push_back(s.get<std::string>());
        }
      }
    }
  }

  void read_compose() {
    const auto n = p_.size();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
          p_.structure(x, y, z).assign(p_.hom_dim[y][z] * p_.hom_dim[x][y] * p_.hom_dim[x][z], p_.field.zero());
    if (!doc_.contains("compose")) return;
    const auto& cm = doc_.at("compose");
    if (!cm.is_object()) fail("/compose", "expected an object");
    for (const auto& [k, v] : cm.items()) {
      const std::string path = child("/compose", k);
      const auto t = split_key(k, 3, path);
      const auto dxy = p_.hom_dim[t[0]][t[1]], dyz = p_.hom_dim[t[1]][t[2]], dxz = p_.hom_dim[t[0]][t[2]];
      need_array(v, path);
      if (v.size() != dyz) fail(path, "expected " + std::to_string(dyz) + " rows (one per basis map Y -> Z)");
      Vec& s = p_.structure(t[0], t[1], t[2]);
      for (std::size_t g = 0; g < dyz; ++g) {
        const std::string gp = child(path, g);
        need_array(v[g], gp);
        if (v[g].size() != dxy) fail(gp, "expected " + std::to_string(dxy) + " entries (one per basis map X -> Y)");
        for (std::size_t f = 0; f < dxy; ++f) {
          const Vec c = vec(v[g][f], dxz, child(gp, f));
          for (std::size_t i = 0; i < dxz; ++i) s[(g * dxy + f) * dxz + i] = c[i];
        }
      }
    }
  }

  void read_identity() {
    const auto& id = need(doc_, "", "identity");
    if (!id.is_object()) fail("/identity", "expected an object");
    std::vector<bool> seen(p_.size(), false);
    for (const auto& [k, v] : id.items()) {
      const std::string path = child("/identity", k);
      const auto x = split_key(k, 1, path)[0];
      p_.identity[x] = vec(v, p_.hom_dim[x][x], path);
      seen[x] = true;
    }
    for (std::size_t x = 0; x < p_.size(); ++x)
      if (!seen[x]) fail("/identity", "missing identity of " + p_.names[x]);
  }

  void read_shift() {
    const auto n = p_.size();
    const auto& sh = need(doc_, "", "shift");
    only_keys(sh, "/shift", {"objects", "homs"});
    const auto& objs = need(sh, "/shift", "objects");
    if (!objs.is_object()) fail("/shift/objects", "expected an object");
    std::vector<bool> seen(n, false);
    for (const auto& [k, v] : objs.items()) {
      const std::string path = child("/shift/objects", k);
      const auto x = split_key(k, 1, path)[0];
      p_.shift.on_objects[x] = Obj(names_of(v, path));
      seen[x] = true;
    }
    for (std::size_t x = 0; x < n; ++x)
      if (!seen[x]) fail("/shift/objects", "missing image of " + p_.names[x]);
    auto dim = [&](const Obj& a, const Obj& b) {
      std::size_t d = 0;
      for (int i : a.summands)
        for (int j : b.summands) d += p_.hom_dim[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      return d;
    };
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        p_.shift.on_homs[x][y] = Mat(p_.field, dim(p_.shift.on_objects[x], p_.shift.on_objects[y]), p_.hom_dim[x][y]);
    if (!sh.contains("homs")) return;
    const auto& homs = sh.at("homs");
    if (!homs.is_object()) fail("/shift/homs", "expected an object");
    for (const auto& [k, v] : homs.items()) {
      const std::string path = child("/shift/homs", k);
      const auto xy = split_key(k, 2, path);
      Mat& m = p_.shift.on_homs[xy[0]][xy[1]];
      need_array(v, path);
      if (v.size() != m.rows()) fail(path, "expected " + std::to_string(m.rows()) + " rows");
      for (std::size_t r = 0; r < m.rows(); ++r) {
        const Vec row = vec(v[r], m.cols(), child(path, r));
        for (std::size_t col = 0; col < m.cols(); ++col) m(r, col) = row[col];
      }
    }
  }

  Obj obj(const json& j, const std::string& path) const { return Obj(names_of(j, path)); }

  Mor mor(const json& j, const Obj& src, const Obj& tgt, const std::string& path) const {
    need_array(j, path);
    Mor out = c_->zero(src, tgt);
    if (j.size() != tgt.rank()) fail(path, "expected " + std::to_string(tgt.rank()) + " block rows");
    for (std::size_t r = 0; r < tgt.rank(); ++r) {
      const std::string rp = child(path, r);
      need_array(j[r], rp);
      if (j[r].size() != src.rank()) fail(rp, "expected " + std::to_string(src.rank()) + " blocks");
      for (std::size_t s = 0; s < src.rank(); ++s) {
        c_->set_block(out, r, s, vec(j[r][s], c_->hom_dim(src.summands[s], tgt.summands[r]), child(rp, s)));
      }
    }
    return out;
  }

  Triangle read_triangle(const json& j, const std::string& path) const {
    only_keys(j, path, {"A", "B", "C", "f", "g", "h"});
    Triangle t;
    t.A = obj(need(j, path, "A"), child(path, "A"));
    t.B = obj(need(j, path, "B"), child(path, "B"));
    t.C = obj(need(j, path, "C"), child(path, "C"));
    t.f = mor(need(j, path, "f"), t.A, t.B, child(path, "f"));
    t.g = mor(need(j, path, "g"), t.B, t.C, child(path, "g"));
    t.h = mor(need(j, path, "h"), t.C, c_->shift(t.A), child(path, "h"));
    return t;
  }

  const json& doc_;
  Presentation p_;
  std::map<std::string, int> index_;
  const Category* c_ = nullptr;
};

json blocks(const Category& c, const Mor& f) {
  json out = json::array();
  for (std::size_t j = 0; j < f.tgt.rank(); ++j) {
    json row = json::array();
    for (std::size_t i = 0; i < f.src.rank(); ++i) row.push_back(c.block(f, j, i));
    out.push_back(std::move(row));
  }
  return out;
}

json matrix(const Mat& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(m.row(r));
  return out;
}

}  // namespace

CategoryFile parse(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const auto end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    const auto pos = what.find("syntax error");
    throw FormatError(pos == std::string::npos ? what : what.substr(pos), line, col);
  }
  return Reader(doc).read();
}

CategoryFile load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

json triangle_to_json(const Category& c, const Triangle& t) {
  return {{"A", tricat::to_json(c, t.A)}, {"B", tricat::to_json(c, t.B)}, {"C", tricat::to_json(c, t.C)},
          {"f", blocks(c, t.f)},          {"g", blocks(c, t.g)},          {"h", blocks(c, t.h)}};
}

json to_json(const Category& c, const std::vector<Triangle>& triangles, const std::map<std::string, Subcat>& subcats) {
  const auto& p = c.presentation();
  const auto n = c.size();
  json out;
  out["format"] = 1;
  out["field"] = {{"kind", "prime"}, {"p", c.field().characteristic()}};
  out["indecomposables"] = p.names;
  json hom = json::object(), comp = json::object(), id = json::object(), objs = json::object(), homs = json::object();
  for (std::size_t x = 0; x < n; ++x) {
    id[p.names[x]] = p.identity[x];
    objs[p.names[x]] = tricat::to_json(c, p.shift.on_objects[x]);
    for (std::size_t y = 0; y < n; ++y) {
      const auto dxy = p.hom_dim[x][y];
      const std::string key = p.names[x] + "|" + p.names[y];
      if (dxy > 0) {
        json e = {{"dim", dxy}};
        if (p.basis_names.size() == n && p.basis_names[x].size() == n && !p.basis_names[x][y].empty()) {
          e["basis_names"] = p.basis_names[x][y];
        }
        hom[key] = e;
      }
      const Mat& m = p.shift.on_homs[x][y];
      if (m.rows() > 0 && m.cols() > 0 && !m.is_zero()) homs[key] = matrix(m);
      for (std::size_t z = 0; z < n; ++z) {
        const auto dyz = p.hom_dim[y][z], dxz = p.hom_dim[x][z];
        const Vec& s = p.structure(x, y, z);
        if (dxy == 0 || dyz == 0 || dxz == 0) continue;
        if (std::all_of(s.begin(), s.end(), [](Scalar v) { return v == 0; })) continue;
        json rows = json::array();
        for (std::size_t g = 0; g < dyz; ++g) {
          json row = json::array();
          for (std::size_t f = 0; f < dxy; ++f)
            row.push_back(Vec(s.begin() + static_cast<std::ptrdiff_t>((g * dxy + f) * dxz),
                              s.begin() + static_cast<std::ptrdiff_t>((g * dxy + f + 1) * dxz)));
          rows.push_back(std::move(row));
        }
        comp[key + "|" + p.names[z]] = std::move(rows);
      }
    }
  }
  out["hom"] = hom;
  out["compose"] = comp;
  out["identity"] = id;
  out["shift"] = {{"objects", objs}, {"homs", homs}};
  json tri = json::array();
  for (const auto& t : triangles) tri.push_back(triangle_to_json(c, t));
  out["triangles"] = tri;
  json sc = json::object();
  for (const auto& [k, v] : subcats) sc[k] = v.names(c);
  out["subcats"] = sc;
  return out;
}

json quotient_sidecar(const Quotient& q) {
  const Category& c = q.base();
  json out;
  out["base_indecomposables"] = c.presentation().names;
  out["z"] = q.z().names(c);
  out["d"] = q.d().names(c);
  json kept = json::array();
  for (int m : q.kept()) kept.push_back(c.name(m));
  out["kept"] = kept;
  json proj = json::object();
  const auto n = static_cast<int>(q.kept().size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Mat m = q.projection_matrix(i, j);
      if (m.cols() == 0) continue;
      proj[c.name(q.kept()[static_cast<std::size_t>(i)]) + "|" + c.name(q.kept()[static_cast<std::size_t>(j)])] =
          matrix(m);
    }
  out["projection"] = proj;
  json table = json::array();
  for (const auto& e : q.sigma_table()) {
    if (e.object < 0) continue;
    table.push_back({{"object", c.name(e.object)}, {"triangle", triangle_to_json(c, e.triangle)}});
  }
  out["sigma_table"] = table;
  return out;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename onto " + path + ": " + ec.message());
  }
}

}  // namespace tricat::io
