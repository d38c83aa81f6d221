#pragma once
// Algebraically defined simplicial complexes over F_n: full (d-1)-skeleton
// plus the d-faces {x_0..x_d} satisfying c * x_d + sum_{j<d} x_j = 0, where
// x_d is the distinguished coefficient-c position.

#include <cstdint>
#include <map>
#include <vector>

#include "hyperpath/numtheory.hpp"

namespace hyperpath {

struct ComplexSpec {
  unsigned d;       // dimension of the top faces
  std::uint32_t n;  // prime, n >= d + 3
  std::uint32_t c;  // 0 <= c < n

  void validate() const;  // throws std::invalid_argument
};

struct OrientedFace {
  std::vector<std::uint32_t> verts;  // sorted ascending, d+1 distinct
  unsigned c_index;                  // position of the coefficient-c vertex
};

class FaceSet {
public:
  void insert(OrientedFace f);  // keeps faces sorted by vertex tuple
  std::size_t size() const { return faces_.size(); }
  const OrientedFace& operator[](std::size_t i) const { return faces_[i]; }
  bool contains(const std::vector<std::uint32_t>& sorted_verts) const;
  long find(const std::vector<std::uint32_t>& sorted_verts) const;  // -1 miss

private:
  std::vector<OrientedFace> faces_;
  std::map<std::vector<std::uint32_t>, std::size_t> index_;
};

// Enumerates the d-faces.  c = 0 and c = 1 are accepted here (face counting
// and small experiments); the classification pipeline is stricter.
FaceSet build_complex(const ComplexSpec& spec);
std::uint64_t count_faces(const ComplexSpec& spec);

// Number of top faces containing a given (d-1)-set, and the maximum over
// all such sets that lie in at least one face.
unsigned cofacet_degree(const FaceSet& fs,
                        const std::vector<std::uint32_t>& sub_sorted);
unsigned max_cofacet_degree(const FaceSet& fs);

// Orbits of the F_n^* scaling action on faces (d = 2).  Each orbit is a list
// of face indices; orbits ordered by smallest member.
std::vector<std::vector<std::size_t>> orbit_decomposition(
    const PrimeModulus& pm, const FaceSet& fs);

// d = 2 classification eligibility: c not in {0, 1, n-1, n-2}.
bool is_eligible_c(std::uint32_t n, std::uint32_t c);
std::vector<std::uint32_t> eligible_c(std::uint32_t n);

}  // namespace hyperpath
