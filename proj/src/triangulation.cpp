#include "mmr/triangulation.hpp"

#include "mmr/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace mmr {

namespace {

std::map<Edge, std::vector<int>> edge_triangles(const TriangulatedSurface& t) {
  std::map<Edge, std::vector<int>> out;
  for (int i = 0; i < static_cast<int>(t.triangles.size()); ++i) {
    const Triangle& tri = t.triangles[static_cast<std::size_t>(i)];
    for (int k = 0; k < 3; ++k) out[make_edge(tri[k], tri[(k + 1) % 3])].push_back(i);
  }
  return out;
}

bool has_directed(const Triangle& t, int a, int b) {
  for (int k = 0; k < 3; ++k)
    if (t[k] == a && t[(k + 1) % 3] == b) return true;
  return false;
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

}  // namespace

Edge make_edge(int u, int w) { return u < w ? Edge{u, w} : Edge{w, u}; }

std::vector<Edge> TriangulatedSurface::edges() const {
  std::vector<Edge> out;
  for (const auto& t : triangles)
    for (int k = 0; k < 3; ++k) out.push_back(make_edge(t[k], t[(k + 1) % 3]));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int TriangulatedSurface::euler_char() const {
  return vertex_count - static_cast<int>(edges().size()) + static_cast<int>(triangles.size());
}

std::vector<int> vertex_link(const TriangulatedSurface& t, int v) {
  std::map<int, std::vector<int>> adj;
  for (const auto& tri : t.triangles) {
    for (int k = 0; k < 3; ++k) {
      if (tri[k] != v) continue;
      const int a = tri[(k + 1) % 3];
      const int b = tri[(k + 2) % 3];
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  }
  const std::string where = "vertex " + std::to_string(v);
  if (adj.empty()) throw Error(ErrorCode::BadVertexLink, where + " lies in no triangle");
  for (const auto& [u, nbrs] : adj)
    if (nbrs.size() != 2) throw Error(ErrorCode::BadVertexLink, where + " has a link vertex of degree " +
                                                                   std::to_string(nbrs.size()));
  std::vector<int> cycle{adj.begin()->first};
  int prev = -1;
  while (true) {
    const auto& nbrs = adj[cycle.back()];
    const int next = nbrs[0] != prev ? nbrs[0] : nbrs[1];
    if (next == cycle.front()) break;
    prev = cycle.back();
    cycle.push_back(next);
    if (cycle.size() > adj.size()) break;
  }
  if (cycle.size() != adj.size()) throw Error(ErrorCode::BadVertexLink, where + " has a disconnected link");
  return cycle;
}

Surface validate_triangulation(const TriangulatedSurface& t) {
  if (t.vertex_count < 1 || t.triangles.empty()) throw Error(ErrorCode::EdgeCountViolation, "empty triangulation");
  for (const auto& tri : t.triangles) {
    for (int x : tri)
      if (x < 0 || x >= t.vertex_count)
        throw Error(ErrorCode::EdgeCountViolation, "vertex " + std::to_string(x) + " out of range");
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw Error(ErrorCode::EdgeCountViolation, "triangle with a repeated vertex");
  }
  for (const auto& [e, ts] : edge_triangles(t))
    if (ts.size() != 2)
      throw Error(ErrorCode::EdgeCountViolation, "edge {" + std::to_string(e.first) + "," + std::to_string(e.second) +
                                                     "} lies in " + std::to_string(ts.size()) + " triangles");
  for (int v = 0; v < t.vertex_count; ++v) vertex_link(t, v);

  std::vector<int> parent(static_cast<std::size_t>(t.vertex_count));
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& tri : t.triangles)
    for (int k = 1; k < 3; ++k) parent[static_cast<std::size_t>(find_root(parent, tri[k]))] = find_root(parent, tri[0]);
  for (int v = 1; v < t.vertex_count; ++v)
    if (find_root(parent, v) != find_root(parent, 0)) throw Error(ErrorCode::Disconnected, "complex is disconnected");

  return Surface::from_euler(t.euler_char(), coherent_orientation(t).has_value());
}

std::optional<std::vector<Triangle>> coherent_orientation(const TriangulatedSurface& t) {
  const auto by_edge = edge_triangles(t);
  std::vector<Triangle> out = t.triangles;
  std::vector<bool> done(t.triangles.size(), false);
  for (std::size_t seed = 0; seed < t.triangles.size(); ++seed) {
    if (done[seed]) continue;
    done[seed] = true;
    std::vector<int> stack{static_cast<int>(seed)};
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      const Triangle cur = out[static_cast<std::size_t>(i)];
      for (int k = 0; k < 3; ++k) {
        const int a = cur[k];
        const int b = cur[(k + 1) % 3];
        for (int j : by_edge.at(make_edge(a, b))) {
          if (j == i) continue;
          Triangle& other = out[static_cast<std::size_t>(j)];
          if (done[static_cast<std::size_t>(j)]) {
            if (!has_directed(other, b, a)) return std::nullopt;
            continue;
          }
          if (!has_directed(other, b, a)) std::swap(other[1], other[2]);
          done[static_cast<std::size_t>(j)] = true;
          stack.push_back(j);
        }
      }
    }
  }
  return out;
}

TriangulatedSurface with_orientation(TriangulatedSurface t) {
  t.orientation = coherent_orientation(t);
  return t;
}

std::string to_off(const TriangulatedSurface& t) {
  std::ostringstream out;
  out << "OFF\n" << t.vertex_count << ' ' << t.triangles.size() << " 0\n";
  for (const auto& tri : t.triangles) out << "3 " << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
  return out.str();
}

TriangulatedSurface from_off(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string magic;
  long long v = 0, f = 0, e = 0;
  if (!(in >> magic) || magic != "OFF") throw Error(ErrorCode::SyntaxError, "missing OFF header");
  if (!(in >> v >> f >> e) || v < 0 || f < 0) throw Error(ErrorCode::SyntaxError, "bad counts line");
  TriangulatedSurface t;
  t.vertex_count = static_cast<int>(v);
  for (long long i = 0; i < f; ++i) {
    int n = 0;
    Triangle tri{};
    if (!(in >> n >> tri[0] >> tri[1] >> tri[2]) || n != 3)
      throw Error(ErrorCode::SyntaxError, "bad face line " + std::to_string(i + 1));
    t.triangles.push_back(tri);
  }
  std::string extra;
  if (in >> extra) throw Error(ErrorCode::SyntaxError, "trailing data after " + std::to_string(f) + " faces");
  return t;
}

}  // namespace mmr
