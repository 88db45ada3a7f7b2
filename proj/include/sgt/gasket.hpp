#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sgt/errors.hpp"
#include "sgt/types.hpp"

namespace sgt {

/// Dyadic rational n / 2^e, normalized (n odd or n = 0, e = 0).
struct Dyadic {
  std::int64_t num = 0;
  int exp = 0;

  Dyadic() = default;
  Dyadic(std::int64_t n, int e);
  static Dyadic integer(std::int64_t n) { return Dyadic(n, 0); }

  friend Dyadic operator+(Dyadic a, Dyadic b);
  friend Dyadic operator-(Dyadic a, Dyadic b);
  friend Dyadic operator*(Dyadic a, Dyadic b);
  Dyadic half() const { return Dyadic(num, exp + 1); }
  bool operator==(const Dyadic&) const = default;
  bool operator<=(const Dyadic& o) const;
  double to_double() const;
};

/// A point of the plane spanned by the gasket, stored exactly as
/// (x, y * sqrt(3)) with dyadic x and y. All vertices and lacuna samples of
/// every level live in this lattice.
struct GasketPoint {
  Dyadic x;  // abscissa
  Dyadic y;  // ordinate divided by sqrt(3)

  bool operator==(const GasketPoint&) const = default;
  Eigen::Vector2d to_plane() const;
};

struct GasketPointHash {
  std::size_t operator()(const GasketPoint& p) const;
};

GasketPoint vertex_p0();
GasketPoint vertex_p1();
GasketPoint vertex_p2();
GasketPoint midpoint(const GasketPoint& a, const GasketPoint& b);

/// Address word over {0,1,2}; prefix order addresses cell nesting.
struct Word {
  std::vector<std::uint8_t> letters;

  Word() = default;
  static Word parse(const std::string& s);  // "" is the empty word
  int length() const { return int(letters.size()); }
  bool is_prefix_of(const Word& other) const;
  Word child(std::uint8_t letter) const;
  std::string str() const;
  bool operator==(const Word&) const = default;
};

/// w_sigma(x) with w_i(x) = p_i + (x - p_i)/2, composed left to right.
GasketPoint apply_word(const Word& sigma, const GasketPoint& x);

/// Exact membership test for the gasket (dyadic points only: every point of
/// this lattice either reaches V_0 under the inverse contractions or exits).
bool in_gasket(const GasketPoint& p);

/// p in C_sigma = w_sigma(K)?
bool in_cell(const Word& sigma, const GasketPoint& p);

struct GraphLevel {
  int level = 0;
  std::vector<GasketPoint> vertices;
  struct Edge {
    int a = 0, b = 0;
    std::uint32_t cell = 0;  // index into cells; the generating word
  };
  std::vector<Edge> edges;
  struct Cell {
    Word word;
    int corner[3];  // images of p0, p1, p2
  };
  std::vector<Cell> cells;
  std::unordered_map<GasketPoint, int, GasketPointHash> index;

  int vertex_of(const GasketPoint& p) const;  // -1 if absent
};

inline constexpr int kMaxGraphLevel = 14;

/// Canonical level-m approximation graph (V_m, E_m); cells in lexicographic
/// word order, vertex ids assigned on first encounter. Cached and immutable.
std::shared_ptr<const GraphLevel> build_graph(int m);

/// Corners of the lacuna of cell sigma in parametrization order: images of
/// midpoint(p0,p1), midpoint(p1,p2), midpoint(p0,p2).
std::array<GasketPoint, 3> lacuna_corners(const Word& sigma);

/// Exact sample point at parameter t = 2 pi (side + j/2^L)/3 on the lacuna.
GasketPoint lacuna_point(const Word& sigma, int side, std::int64_t j, int level_l);

/// All 3 * 2^L lacuna sample points in parametrization order.
std::vector<GasketPoint> lacuna_samples(const Word& sigma, int level_l);

/// Constant-speed parametrization with period 2 pi; arbitrary t snaps to the
/// nearest grid point at snap_level (flagged through *snapped).
GasketPoint lacuna_param(const Word& sigma, double t, int snap_level = 20,
                         bool* snapped = nullptr);

/// If p lies on the lacuna of sigma, its parameter in [0, 2 pi); else empty.
std::optional<double> lacuna_locate(const Word& sigma, const GasketPoint& p);

/// Shortest-path length between two points of the level-m skeleton, edge
/// weight 2^{-m}, with dyadic subdivision of the entry/exit edges. Exact for
/// the level-m graph; nonincreasing in m.
ResidueEstimate geodesic_distance(const GasketPoint& x, const GasketPoint& y, int m);

}  // namespace sgt
