#include "sfwg/mesh.hpp"

#include "sfwg/exceptions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace sfwg {

namespace {

double signed_area(const std::vector<Vector2>& verts, const std::vector<int>& loop) {
  double a2 = 0.0;
  int m = static_cast<int>(loop.size());
  for (int q = 0; q < m; ++q) {
    const Vector2& p = verts[loop[q]];
    const Vector2& r = verts[loop[(q + 1) % m]];
    a2 += p.x() * r.y() - r.x() * p.y();
  }
  return 0.5 * a2;
}

bool is_convex_ccw(const std::vector<Vector2>& verts, const std::vector<int>& loop) {
  int m = static_cast<int>(loop.size());
  double scale = 0.0;
  for (int q = 0; q < m; ++q)
    scale = std::max(scale, (verts[loop[(q + 1) % m]] - verts[loop[q]]).norm());
  for (int q = 0; q < m; ++q) {
    Vector2 u = verts[loop[(q + 1) % m]] - verts[loop[q]];
    Vector2 v = verts[loop[(q + 2) % m]] - verts[loop[(q + 1) % m]];
    double cross = u.x() * v.y() - u.y() * v.x();
    if (cross < -1e-14 * scale * scale) return false;
  }
  return true;
}

} // namespace

PolyMesh PolyMesh::from_cells(std::vector<Vector2> vertices,
                              std::vector<std::vector<int>> cells) {
  PolyMesh mesh;
  mesh.vertices_ = std::move(vertices);
  mesh.cells_ = std::move(cells);
  int nv = mesh.n_vertices();
  int nc = mesh.n_cells();

  mesh.areas_.resize(nc);
  mesh.centroids_.resize(nc);
  mesh.diameters_.resize(nc);
  mesh.cell_edges_.resize(nc);

  for (int c = 0; c < nc; ++c) {
    const auto& loop = mesh.cells_[c];
    if (loop.size() < 3)
      throw ValidationError("cell " + std::to_string(c) + " has fewer than 3 vertices");
    std::unordered_set<int> seen;
    for (int v : loop) {
      if (v < 0 || v >= nv)
        throw ValidationError("cell " + std::to_string(c) + " has vertex index out of range");
      if (!seen.insert(v).second)
        throw ValidationError("cell " + std::to_string(c) + " repeats a vertex index");
    }
    double area = signed_area(mesh.vertices_, loop);
    if (area <= 0.0)
      throw ValidationError("cell " + std::to_string(c) +
                            " is not counter-clockwise (signed area <= 0)");
    if (!is_convex_ccw(mesh.vertices_, loop))
      throw ValidationError("cell " + std::to_string(c) + " is not convex");
    mesh.areas_[c] = area;

    // polygon centroid
    double cx = 0.0, cy = 0.0;
    int m = static_cast<int>(loop.size());
    for (int q = 0; q < m; ++q) {
      const Vector2& p = mesh.vertices_[loop[q]];
      const Vector2& r = mesh.vertices_[loop[(q + 1) % m]];
      double w = p.x() * r.y() - r.x() * p.y();
      cx += (p.x() + r.x()) * w;
      cy += (p.y() + r.y()) * w;
    }
    mesh.centroids_[c] = Vector2(cx, cy) / (6.0 * area);

    double diam = 0.0;
    for (int q = 0; q < m; ++q)
      for (int r = q + 1; r < m; ++r)
        diam = std::max(diam, (mesh.vertices_[loop[q]] - mesh.vertices_[loop[r]]).norm());
    mesh.diameters_[c] = diam;
  }

  // edge table, keyed on sorted endpoints
  std::map<std::pair<int, int>, int> edge_index;
  for (int c = 0; c < nc; ++c) {
    const auto& loop = mesh.cells_[c];
    int m = static_cast<int>(loop.size());
    mesh.cell_edges_[c].resize(m);
    for (int q = 0; q < m; ++q) {
      int a = loop[q], b = loop[(q + 1) % m];
      auto key = std::minmax(a, b);
      auto it = edge_index.find(key);
      if (it == edge_index.end()) {
        MeshEdge e;
        e.a = a;
        e.b = b;
        e.cell_minus = c;
        edge_index.emplace(key, static_cast<int>(mesh.edges_.size()));
        mesh.cell_edges_[c][q] = static_cast<int>(mesh.edges_.size());
        mesh.edges_.push_back(e);
      } else {
        MeshEdge& e = mesh.edges_[it->second];
        if (e.cell_plus != -1)
          throw ValidationError("edge (" + std::to_string(key.first) + "," +
                                std::to_string(key.second) + ") is shared by more than 2 cells");
        e.cell_plus = c;
        mesh.cell_edges_[c][q] = it->second;
      }
    }
  }

  // normals: away from cell_minus (outward for boundary edges)
  for (auto& e : mesh.edges_) {
    e.boundary = (e.cell_plus == -1);
    Vector2 t = mesh.vertices_[e.b] - mesh.vertices_[e.a];
    e.length = t.norm();
    if (e.length <= 0.0) throw GeometryError("zero-length edge");
    t /= e.length;
    e.normal = Vector2(t.y(), -t.x());
  }

  mesh.h_ = *std::max_element(mesh.diameters_.begin(), mesh.diameters_.end());
  mesh.total_area_ = 0.0;
  for (double a : mesh.areas_) mesh.total_area_ += a;
  return mesh;
}

Vector2 PolyMesh::outward_normal(int c, int q) const {
  const auto& loop = cells_[c];
  int m = static_cast<int>(loop.size());
  Vector2 t = vertices_[loop[(q + 1) % m]] - vertices_[loop[q]];
  t /= t.norm();
  return Vector2(t.y(), -t.x());
}

double PolyMesh::edge_sign(int c, int q) const {
  const MeshEdge& e = edges_[cell_edges_[c][q]];
  return e.cell_minus == c ? 1.0 : -1.0;
}

namespace {

PolyMesh generate_triangles(int level) {
  int n = 1 << (level - 1);
  double s = 1.0 / n;
  std::vector<Vector2> verts;
  verts.reserve(static_cast<size_t>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) verts.emplace_back(i * s, j * s);
  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::vector<int>> cells;
  cells.reserve(2 * static_cast<size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      // split by the diagonal from (i+1, j) to (i, j+1)
      cells.push_back({vid(i, j), vid(i + 1, j), vid(i, j + 1)});
      cells.push_back({vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  return PolyMesh::from_cells(std::move(verts), std::move(cells));
}

PolyMesh generate_pentagons(int level, double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw std::invalid_argument("pentagon offset alpha must lie in (0, 0.5)");
  int n = 1 << (level - 1);
  double s = 1.0 / n;
  std::vector<Vector2> verts;
  // vertex keys: role tag + macro indices, so shared vertices are created once
  std::map<std::tuple<int, int, int>, int> vmap;
  enum Role { Corner, HMid, VMid, RhL, RhB, RhR, RhT };
  auto V = [&](Role role, int i, int j, double x, double y) {
    auto key = std::make_tuple(static_cast<int>(role), i, j);
    auto it = vmap.find(key);
    if (it != vmap.end()) return it->second;
    int id = static_cast<int>(verts.size());
    verts.emplace_back(x, y);
    vmap.emplace(key, id);
    return id;
  };
  std::vector<std::vector<int>> cells;
  cells.reserve(5 * static_cast<size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double x0 = i * s, y0 = j * s;
      int c00 = V(Corner, i, j, x0, y0);
      int c10 = V(Corner, i + 1, j, (i + 1) * s, y0);
      int c01 = V(Corner, i, j + 1, x0, (j + 1) * s);
      int c11 = V(Corner, i + 1, j + 1, (i + 1) * s, (j + 1) * s);
      int hb = V(HMid, i, j, (i + 0.5) * s, y0);
      int ht = V(HMid, i, j + 1, (i + 0.5) * s, (j + 1) * s);
      int vl = V(VMid, i, j, x0, (j + 0.5) * s);
      int vr = V(VMid, i + 1, j, (i + 1) * s, (j + 0.5) * s);
      int rl = V(RhL, i, j, (i + alpha) * s, (j + 0.5) * s);
      int rb = V(RhB, i, j, (i + 0.5) * s, (j + alpha) * s);
      int rr = V(RhR, i, j, (i + 1 - alpha) * s, (j + 0.5) * s);
      int rt = V(RhT, i, j, (i + 0.5) * s, (j + 1 - alpha) * s);
      cells.push_back({c00, hb, rb, rl, vl});  // bottom-left pentagon
      cells.push_back({hb, c10, vr, rr, rb});  // bottom-right
      cells.push_back({vr, c11, ht, rt, rr});  // top-right
      cells.push_back({ht, c01, vl, rl, rt});  // top-left
      cells.push_back({rb, rr, rt, rl});       // central quadrilateral
    }
  return PolyMesh::from_cells(std::move(verts), std::move(cells));
}

} // namespace

PolyMesh generate(const GridFamily& family) {
  if (family.level < 1) throw std::invalid_argument("grid level must be >= 1");
  PolyMesh mesh = family.kind == GridKind::UniformTriangle
                      ? generate_triangles(family.level)
                      : generate_pentagons(family.level, family.alpha);
  mesh.provenance = family;
  return mesh;
}

PolyMesh refine(const PolyMesh& mesh, const GridFamily& family) {
  if (!mesh.provenance)
    throw std::invalid_argument("refine: mesh was not produced by generate()");
  const GridFamily& p = *mesh.provenance;
  if (p.kind != family.kind || p.level != family.level || p.alpha != family.alpha)
    throw std::invalid_argument("refine: family does not match mesh provenance");
  GridFamily next = p;
  next.level += 1;
  return generate(next);
}

// ---------------------------------------------------------------------------
// text format

namespace {

struct LineReader {
  std::istream& in;
  int line_no = 0;

  /// Next non-empty, non-comment line. Returns false at EOF.
  bool next(std::string& out) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_no;
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      auto is_space = [](unsigned char ch) { return std::isspace(ch); };
      if (std::all_of(raw.begin(), raw.end(), is_space)) continue;
      out = raw;
      return true;
    }
    return false;
  }
};

} // namespace

PolyMesh read_mesh(std::istream& in) {
  LineReader rd{in};
  std::string line;

  if (!rd.next(line)) throw ParseError(rd.line_no, "empty mesh file");
  {
    std::istringstream ls(line);
    std::string magic;
    int version = 0;
    if (!(ls >> magic >> version) || magic != "polymesh" || version != 1)
      throw ParseError(rd.line_no, "expected header 'polymesh 1'");
  }

  if (!rd.next(line)) throw ParseError(rd.line_no, "missing vertex/cell counts");
  int nv = 0, nc = 0;
  {
    std::istringstream ls(line);
    if (!(ls >> nv >> nc) || nv < 3 || nc < 1)
      throw ParseError(rd.line_no, "malformed counts line, expected 'nv nc'");
  }

  std::vector<Vector2> verts(nv);
  for (int v = 0; v < nv; ++v) {
    if (!rd.next(line)) throw ParseError(rd.line_no, "unexpected end of file in vertex list");
    std::istringstream ls(line);
    double x, y;
    if (!(ls >> x >> y)) throw ParseError(rd.line_no, "malformed vertex line");
    verts[v] = Vector2(x, y);
  }

  std::vector<std::vector<int>> cells(nc);
  std::vector<int> cell_line(nc);
  for (int c = 0; c < nc; ++c) {
    if (!rd.next(line)) throw ParseError(rd.line_no, "unexpected end of file in cell list");
    cell_line[c] = rd.line_no;
    std::istringstream ls(line);
    int m = 0;
    if (!(ls >> m) || m < 3) throw ParseError(rd.line_no, "malformed cell line");
    cells[c].resize(m);
    std::unordered_set<int> seen;
    for (int q = 0; q < m; ++q) {
      if (!(ls >> cells[c][q]) || cells[c][q] < 0 || cells[c][q] >= nv)
        throw ParseError(rd.line_no, "cell vertex index missing or out of range");
      if (!seen.insert(cells[c][q]).second)
        throw ParseError(rd.line_no,
                         "cell " + std::to_string(c) + " repeats vertex index " +
                             std::to_string(cells[c][q]));
    }
    if (signed_area(verts, cells[c]) <= 0.0)
      throw ParseError(rd.line_no, "cell " + std::to_string(c) +
                                       " is clockwise or degenerate (signed area <= 0)");
  }

  if (!rd.next(line)) throw ParseError(rd.line_no, "missing boundary line");
  {
    std::istringstream ls(line);
    std::string word, mode;
    if (!(ls >> word >> mode) || word != "boundary" || mode != "auto")
      throw ParseError(rd.line_no, "expected 'boundary auto'");
  }

  PolyMesh mesh = PolyMesh::from_cells(std::move(verts), std::move(cells));

  // meshes spanning the unit square must tile it
  double minx = 1e300, miny = 1e300, maxx = -1e300, maxy = -1e300;
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    minx = std::min(minx, mesh.vertex(v).x());
    maxx = std::max(maxx, mesh.vertex(v).x());
    miny = std::min(miny, mesh.vertex(v).y());
    maxy = std::max(maxy, mesh.vertex(v).y());
  }
  bool unit_square = std::abs(minx) <= 1e-12 && std::abs(miny) <= 1e-12 &&
                     std::abs(maxx - 1.0) <= 1e-12 && std::abs(maxy - 1.0) <= 1e-12;
  if (unit_square && std::abs(mesh.total_area() - 1.0) > 1e-12)
    throw ValidationError("cell areas sum to " + std::to_string(mesh.total_area()) +
                          " but the mesh spans the unit square (expected 1)");
  return mesh;
}

PolyMesh read_mesh_string(const std::string& text) {
  std::istringstream in(text);
  return read_mesh(in);
}

void write_mesh(const PolyMesh& mesh, std::ostream& out) {
  out << "polymesh 1\n";
  out << mesh.n_vertices() << ' ' << mesh.n_cells() << '\n';
  char buf[64];
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g", mesh.vertex(v).x(), mesh.vertex(v).y());
    out << buf << '\n';
  }
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const auto& loop = mesh.cell(c);
    out << loop.size();
    for (int v : loop) out << ' ' << v;
    out << '\n';
  }
  out << "boundary auto\n";
}

std::string write_mesh_string(const PolyMesh& mesh) {
  std::ostringstream out;
  write_mesh(mesh, out);
  return out.str();
}

} // namespace sfwg
