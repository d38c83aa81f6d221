#include "hyperpath/scomplex.hpp"

#include <algorithm>
#include <stdexcept>

namespace hyperpath {

void ComplexSpec::validate() const {
  if (!is_prime(n)) throw std::invalid_argument("ComplexSpec: n must be prime");
  if (d < 1) throw std::invalid_argument("ComplexSpec: d >= 1");
  if (n < d + 3) throw std::invalid_argument("ComplexSpec: n >= d + 3");
  if (c >= n) throw std::invalid_argument("ComplexSpec: c must lie in F_n");
}

void FaceSet::insert(OrientedFace f) {
  auto [it, fresh] = index_.emplace(f.verts, faces_.size());
  if (!fresh) return;
  faces_.push_back(std::move(f));
}

bool FaceSet::contains(const std::vector<std::uint32_t>& sorted_verts) const {
  return index_.count(sorted_verts) != 0;
}

long FaceSet::find(const std::vector<std::uint32_t>& sorted_verts) const {
  auto it = index_.find(sorted_verts);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

namespace {

// deterministic order: faces come out sorted by vertex tuple
FaceSet sorted_copy(std::vector<OrientedFace> faces) {
  std::sort(faces.begin(), faces.end(),
            [](const OrientedFace& a, const OrientedFace& b) {
              return a.verts != b.verts ? a.verts < b.verts
                                        : a.c_index < b.c_index;
            });
  FaceSet out;
  for (auto& f : faces) out.insert(std::move(f));
  return out;
}

}  // namespace

FaceSet build_complex(const ComplexSpec& spec) {
  spec.validate();
  const PrimeModulus pm(spec.n);
  const std::uint32_t n = spec.n, c = spec.c;
  const unsigned d = spec.d;
  std::vector<OrientedFace> found;

  // enumerate d-subsets sigma = {x_0..x_{d-1}}; the coefficient-c vertex is
  // y with c*y = -sum(sigma) (c != 0), or free when c == 0
  std::vector<std::uint32_t> sigma(d);
  std::vector<std::uint32_t> verts(d + 1);
  auto emit = [&](std::uint32_t y) {
    for (unsigned i = 0; i < d; ++i) {
      if (sigma[i] == y) return;
      verts[i] = sigma[i];
    }
    verts[d] = y;
    std::sort(verts.begin(), verts.end());
    unsigned ci = static_cast<unsigned>(
        std::find(verts.begin(), verts.end(), y) - verts.begin());
    found.push_back({verts, ci});
  };

  // iterative subset enumeration
  std::vector<std::uint32_t> stack;
  stack.reserve(d);
  std::uint64_t sum = 0;
  // recursive lambda over start index
  auto rec = [&](auto&& self, std::uint32_t start) -> void {
    if (stack.size() == d) {
      for (unsigned i = 0; i < d; ++i) sigma[i] = stack[i];
      std::uint32_t s = static_cast<std::uint32_t>(sum % n);
      if (c != 0) {
        emit(pm.mul(pm.neg(s), pm.inv(c)));
      } else if (s == 0) {
        for (std::uint32_t y = 0; y < n; ++y) emit(y);
      }
      return;
    }
    for (std::uint32_t v = start; v < n; ++v) {
      stack.push_back(v);
      sum += v;
      self(self, v + 1);
      sum -= v;
      stack.pop_back();
    }
  };
  rec(rec, 0);
  return sorted_copy(std::move(found));
}

std::uint64_t count_faces(const ComplexSpec& spec) {
  return build_complex(spec).size();
}

unsigned cofacet_degree(const FaceSet& fs,
                        const std::vector<std::uint32_t>& sub_sorted) {
  unsigned deg = 0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto& v = fs[i].verts;
    if (std::includes(v.begin(), v.end(), sub_sorted.begin(),
                      sub_sorted.end()))
      ++deg;
  }
  return deg;
}

unsigned max_cofacet_degree(const FaceSet& fs) {
  std::map<std::vector<std::uint32_t>, unsigned> counts;
  std::vector<std::uint32_t> sub;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto& v = fs[i].verts;
    for (std::size_t omit = 0; omit < v.size(); ++omit) {
      sub.clear();
      for (std::size_t j = 0; j < v.size(); ++j)
        if (j != omit) sub.push_back(v[j]);
      ++counts[sub];
    }
  }
  unsigned best = 0;
  for (const auto& [k, cnt] : counts) best = std::max(best, cnt);
  return best;
}

std::vector<std::vector<std::size_t>> orbit_decomposition(
    const PrimeModulus& pm, const FaceSet& fs) {
  std::vector<bool> seen(fs.size(), false);
  std::vector<std::vector<std::size_t>> orbits;
  std::vector<std::uint32_t> scaled;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> orbit;
    for (std::uint32_t u = 1; u < pm.n(); ++u) {
      scaled = fs[i].verts;
      for (auto& v : scaled) v = pm.mul(v, u);
      std::sort(scaled.begin(), scaled.end());
      long idx = fs.find(scaled);
      if (idx < 0)
        throw std::logic_error("orbit_decomposition: scaling left the complex");
      if (!seen[static_cast<std::size_t>(idx)]) {
        seen[static_cast<std::size_t>(idx)] = true;
        orbit.push_back(static_cast<std::size_t>(idx));
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

bool is_eligible_c(std::uint32_t n, std::uint32_t c) {
  return c > 1 && c < n - 2;
}

std::vector<std::uint32_t> eligible_c(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t c = 2; c < n - 2; ++c) out.push_back(c);
  return out;
}

}  // namespace hyperpath
