#include "mmr/fixtures.hpp"

#include "mmr/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace mmr {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

struct Located {
  int vertex;
  Word gamma;
};

// Builds a marked triangulation from a plane triangulation invariant under
// the deck group. `locate` maps a plane point to its orbit representative
// and the deck element carrying the representative to it.
MarkedTriangulation from_plane(Surface surface, int vertex_count,
                               const std::vector<std::array<std::pair<int, int>, 3>>& plane_triangles,
                               const std::function<Located(int, int)>& locate) {
  MarkedTriangulation m;
  m.surface = surface;
  m.tri.vertex_count = vertex_count;
  for (const auto& pt : plane_triangles) {
    std::array<Located, 3> loc{locate(pt[0].first, pt[0].second), locate(pt[1].first, pt[1].second),
                               locate(pt[2].first, pt[2].second)};
    m.tri.triangles.push_back({loc[0].vertex, loc[1].vertex, loc[2].vertex});
    for (int k = 0; k < 3; ++k) {
      const Located& p = loc[static_cast<std::size_t>(k)];
      const Located& q = loc[static_cast<std::size_t>((k + 1) % 3)];
      const Word w = p.gamma.inverse() * q.gamma;
      m.edge_words.try_emplace({p.vertex, q.vertex}, w);
      m.edge_words.try_emplace({q.vertex, p.vertex}, w.inverse());
    }
  }
  return m;
}

void add_square(std::vector<std::array<std::pair<int, int>, 3>>& out, int x, int y, bool main_diagonal) {
  const std::pair<int, int> p{x, y}, r{x + 1, y}, d{x + 1, y + 1}, u{x, y + 1};
  if (main_diagonal) {
    out.push_back({p, r, d});
    out.push_back({p, d, u});
  } else {
    out.push_back({p, r, u});
    out.push_back({r, d, u});
  }
}

}  // namespace

const Word& MarkedTriangulation::edge_word(int from, int to) const {
  auto it = edge_words.find({from, to});
  if (it == edge_words.end())
    throw Error(ErrorCode::OutOfRange, "no edge " + std::to_string(from) + " -> " + std::to_string(to));
  return it->second;
}

TriangulatedSurface tetrahedron() { return {4, {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}}, std::nullopt}; }

TriangulatedSurface octahedron() {
  TriangulatedSurface t;
  t.vertex_count = 6;
  for (int x : {0, 1})
    for (int y : {2, 3})
      for (int z : {4, 5}) {
        // Outward orientation: flip octants with an odd number of negative axes.
        const bool flip = ((x + y + z) % 2) == 1;
        t.triangles.push_back(flip ? Triangle{x, z, y} : Triangle{x, y, z});
      }
  return t;
}

TriangulatedSurface bipyramid(int k) {
  if (k < 3) throw Error(ErrorCode::OutOfRange, "bipyramid needs an equator of length >= 3");
  TriangulatedSurface t;
  t.vertex_count = k + 2;
  for (int i = 0; i < k; ++i) {
    const int j = (i + 1) % k;
    t.triangles.push_back({k, i, j});
    t.triangles.push_back({k + 1, j, i});
  }
  return t;
}

MarkedTriangulation marked_sphere() {
  MarkedTriangulation m;
  m.tri = tetrahedron();
  m.surface = Surface::sphere();
  for (const auto& [u, w] : m.tri.edges()) {
    m.edge_words[{u, w}] = Word();
    m.edge_words[{w, u}] = Word();
  }
  return m;
}

MarkedTriangulation lattice_torus(int n, int s, int h) {
  if (n < 1 || h < 1) throw Error(ErrorCode::OutOfRange, "lattice torus needs n, h >= 1");
  std::vector<std::array<std::pair<int, int>, 3>> plane;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < n; ++x) add_square(plane, x, y, true);
  auto locate = [=](int x, int y) {
    const std::int64_t q = floor_div(y, h);
    const std::int64_t xs = x - q * s;
    const std::int64_t p = floor_div(xs, n);
    const int x0 = static_cast<int>(xs - p * n);
    const int y0 = static_cast<int>(y - q * h);
    return Located{y0 * n + x0, Word::power(0, p) * Word::power(1, q)};
  };
  return from_plane(Surface::torus(), n * h, plane, locate);
}

MarkedTriangulation grid_klein_bottle(int w, int h) {
  if (w < 1 || h < 2 || h % 2 != 0) throw Error(ErrorCode::OutOfRange, "Klein grid needs w >= 1 and even h >= 2");
  std::vector<std::array<std::pair<int, int>, 3>> plane;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) add_square(plane, x, y, y % 2 == 0);
  auto locate = [=](int x, int y) {
    const std::int64_t p = floor_div(x, w);
    const int x0 = static_cast<int>(x - p * w);
    const std::int64_t yp = (p % 2 == 0) ? y : -static_cast<std::int64_t>(y);
    const std::int64_t q = floor_div(yp, h);
    const int y0 = static_cast<int>(yp - q * h);
    return Located{x0 * h + y0, Word::power(0, p) * Word::power(1, q)};
  };
  return from_plane(Surface::klein_bottle(), w * h, plane, locate);
}

MarkedTriangulation projective_plane_6() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<std::array<double, 3>> ico;
  for (double s1 : {1.0, -1.0})
    for (double s2 : {1.0, -1.0}) {
      ico.push_back({0, s1, s2 * phi});
      ico.push_back({s1, s2 * phi, 0});
      ico.push_back({s2 * phi, 0, s1});
    }
  // Representatives: first nonzero coordinate positive.
  auto positive = [](const std::array<double, 3>& v) {
    for (double c : v)
      if (std::abs(c) > 1e-9) return c > 0;
    return true;
  };
  std::vector<int> cls(ico.size()), sign(ico.size());
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < ico.size(); ++i) {
    if (!positive(ico[i])) continue;
    reps.push_back(i);
  }
  for (std::size_t i = 0; i < ico.size(); ++i)
    for (std::size_t r = 0; r < reps.size(); ++r) {
      const auto& v = ico[reps[r]];
      bool same = true, opposite = true;
      for (int k = 0; k < 3; ++k) {
        same = same && std::abs(ico[i][static_cast<std::size_t>(k)] - v[static_cast<std::size_t>(k)]) < 1e-9;
        opposite = opposite && std::abs(ico[i][static_cast<std::size_t>(k)] + v[static_cast<std::size_t>(k)]) < 1e-9;
      }
      if (same || opposite) {
        cls[i] = static_cast<int>(r);
        sign[i] = same ? 0 : 1;
      }
    }
  auto adjacent = [&](std::size_t i, std::size_t j) {
    double d2 = 0;
    for (int k = 0; k < 3; ++k) {
      const double d = ico[i][static_cast<std::size_t>(k)] - ico[j][static_cast<std::size_t>(k)];
      d2 += d * d;
    }
    return std::abs(d2 - 4.0) < 1e-9;
  };
  MarkedTriangulation m;
  m.surface = Surface::projective_plane();
  m.tri.vertex_count = 6;
  for (std::size_t i : reps)
    for (std::size_t j = 0; j < ico.size(); ++j)
      for (std::size_t k = j + 1; k < ico.size(); ++k) {
        if (!(adjacent(i, j) && adjacent(i, k) && adjacent(j, k))) continue;
        // Each RP^2 triangle lifts to two antipodal triangles; keep the one
        // whose least class vertex is a representative.
        const int a = cls[i], b = cls[j], c = cls[k];
        if (a > b || a > c) continue;
        m.tri.triangles.push_back({a, b, c});
        const std::array<std::size_t, 3> lift{i, j, k};
        for (int e = 0; e < 3; ++e) {
          const std::size_t p = lift[static_cast<std::size_t>(e)], q = lift[static_cast<std::size_t>((e + 1) % 3)];
          const Word w = sign[p] != sign[q] ? Word::generator(0) : Word();
          m.edge_words[{cls[p], cls[q]}] = w;
          m.edge_words[{cls[q], cls[p]}] = w.inverse();
        }
      }
  return m;
}

// ------------------------------------------------------------------ pieces

namespace {

constexpr int kDiskJ = 12;      // first vertex of the twelve-vertex ring
constexpr int kDiskCenter = 24;

// Collar from the boundary hexagon to the inner hexagon, then to a
// twelve-vertex ring; `j(i)` names ring vertex i.
std::vector<Triangle> collar(const std::function<int(int)>& j) {
  std::vector<Triangle> out;
  for (int i = 0; i < 6; ++i) {
    const int n = (i + 1) % 6;
    out.push_back({i, n, 6 + i});
    out.push_back({n, 6 + n, 6 + i});
    out.push_back({6 + i, j(2 * i), j(2 * i + 1)});
    out.push_back({6 + i, j(2 * i + 1), 6 + n});
    out.push_back({6 + n, j(2 * i + 1), j((2 * i + 2) % 12)});
  }
  return out;
}

// The handle piece is the disk with its central star replaced by three
// copies glued back in two alternating patterns. Switch vertices J0, J3,
// J6, J9 are shared by all copies; on the arcs J0..J3 and J6..J9 copy 1
// continues the collar while copies 2 and 3 fold together, and on the
// other two arcs copies 2 and 1 trade places.
constexpr int kHandleFoldBase = 25;
constexpr int kHandleSecondCenter = 33;

bool is_switch(int i) { return i % 3 == 0; }
int fold_vertex(int i) { return kHandleFoldBase + (i - 1 - i / 3); }
// Sheet 0 is the collar; sheets 1..3 are the star copies.
int handle_label(int i, int sheet) {
  if (is_switch(i)) return kDiskJ + i;
  const int seam_sheet = (i % 6) < 3 ? 1 : 2;
  return (sheet == 0 || sheet == seam_sheet) ? kDiskJ + i : fold_vertex(i);
}
int handle_center(int sheet) { return sheet == 1 ? kDiskCenter : kHandleSecondCenter + sheet - 2; }

}  // namespace

Piece disk_piece() {
  Piece p;
  p.vertex_count = 25;
  p.triangles = collar([](int i) { return kDiskJ + i; });
  for (int i = 0; i < 12; ++i) p.triangles.push_back({kDiskCenter, kDiskJ + i, kDiskJ + (i + 1) % 12});
  return p;
}

Piece handle_piece() {
  Piece p;
  p.vertex_count = kHandleSecondCenter + 2;
  p.triangles = collar([](int i) { return handle_label(i, 0); });
  for (int sheet = 1; sheet <= 3; ++sheet)
    for (int i = 0; i < 12; ++i)
      p.triangles.push_back({handle_center(sheet), handle_label(i, sheet), handle_label((i + 1) % 12, sheet)});
  return p;
}

std::vector<int> handle_to_disk() {
  std::vector<int> f(static_cast<std::size_t>(kHandleSecondCenter + 2));
  for (int v = 0; v <= kDiskCenter; ++v) f[static_cast<std::size_t>(v)] = v;
  for (int i = 0; i < 12; ++i)
    if (!is_switch(i)) f[static_cast<std::size_t>(fold_vertex(i))] = kDiskJ + i;
  f[kHandleSecondCenter] = f[kHandleSecondCenter + 1] = kDiskCenter;
  return f;
}

Piece crosscap_piece() {
  // A 3x2 grid strip whose ends are glued with a flip.
  return {9,
          {{0, 1, 7}, {0, 7, 6}, {6, 7, 3}, {7, 4, 3}, {1, 2, 8}, {1, 8, 7},
           {7, 8, 4}, {8, 5, 4}, {2, 3, 6}, {2, 6, 8}, {8, 6, 5}, {6, 0, 5}}};
}

Assembly assemble(const std::vector<Piece>& pieces) {
  const int k = static_cast<int>(pieces.size());
  int c = 1;
  while (c * c < k) ++c;
  const int side = 3 * c + 2;  // grid points per side
  auto grid = [&](int x, int y) { return x * side + y; };
  TriangulatedSurface base;
  base.vertex_count = side * side + 1;
  const int apex = side * side;
  for (int x = 0; x + 1 < side; ++x)
    for (int y = 0; y + 1 < side; ++y) {
      base.triangles.push_back({grid(x, y), grid(x + 1, y), grid(x + 1, y + 1)});
      base.triangles.push_back({grid(x, y), grid(x + 1, y + 1), grid(x, y + 1)});
    }
  std::vector<int> rim;
  for (int x = 0; x + 1 < side; ++x) rim.push_back(grid(x, 0));
  for (int y = 0; y + 1 < side; ++y) rim.push_back(grid(side - 1, y));
  for (int x = side - 1; x > 0; --x) rim.push_back(grid(x, side - 1));
  for (int y = side - 1; y > 0; --y) rim.push_back(grid(0, y));
  for (std::size_t i = 0; i < rim.size(); ++i) base.triangles.push_back({apex, rim[(i + 1) % rim.size()], rim[i]});

  std::vector<int> centers;
  for (int i = 0; i < k; ++i) centers.push_back(grid(2 + 3 * (i % c), 2 + 3 * (i / c)));

  // Renumber the sphere part without the hole centers.
  std::vector<int> id(static_cast<std::size_t>(base.vertex_count), -1);
  int next = 0;
  for (int v = 0; v < base.vertex_count; ++v)
    if (std::find(centers.begin(), centers.end(), v) == centers.end()) id[static_cast<std::size_t>(v)] = next++;

  Assembly out;
  for (const auto& t : base.triangles) {
    if (std::any_of(t.begin(), t.end(), [&](int v) { return id[static_cast<std::size_t>(v)] < 0; })) continue;
    out.surface.triangles.push_back(
        {id[static_cast<std::size_t>(t[0])], id[static_cast<std::size_t>(t[1])], id[static_cast<std::size_t>(t[2])]});
  }
  for (int i = 0; i < k; ++i) {
    const auto link = vertex_link(base, centers[static_cast<std::size_t>(i)]);
    const Piece& piece = pieces[static_cast<std::size_t>(i)];
    std::vector<int> global(static_cast<std::size_t>(piece.vertex_count));
    for (int l = 0; l < piece.vertex_count; ++l)
      global[static_cast<std::size_t>(l)] = l < 6 ? id[static_cast<std::size_t>(link[static_cast<std::size_t>(l)])] : next++;
    for (const auto& t : piece.triangles)
      out.surface.triangles.push_back({global[static_cast<std::size_t>(t[0])], global[static_cast<std::size_t>(t[1])],
                                       global[static_cast<std::size_t>(t[2])]});
    out.piece_vertices.push_back(std::move(global));
  }
  out.surface.vertex_count = next;
  return out;
}

TriangulatedSurface surface_fixture(const Surface& s) {
  const Piece piece = s.orientable ? handle_piece() : crosscap_piece();
  return assemble(std::vector<Piece>(static_cast<std::size_t>(s.genus), piece)).surface;
}

}  // namespace mmr
