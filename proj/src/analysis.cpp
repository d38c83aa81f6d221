#include "hyperpath/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "hyperpath/ratlinalg.hpp"
#include "hyperpath/scomplex.hpp"
#include "hyperpath/util.hpp"

namespace hyperpath {

bool predicted_nonacyclic(const PrimeModulus& pm, std::uint32_t c) {
  return gcd_criterion(pm, c).predicted;
}

unsigned smallest_predicted_k(const PrimeModulus& pm, std::uint32_t c) {
  std::uint32_t g = gcd_criterion(pm, c).g_order;
  if (g <= 1) return 0;
  for (std::uint32_t p = 2; p * p <= g; ++p)
    if (g % p == 0) return p;
  return g;  // g itself is prime
}

KernelVector kernel_vector(const PrimeModulus& pm, std::uint32_t c, unsigned k,
                           CycloFieldCache& fields) {
  const std::uint32_t n = pm.n();
  const std::uint32_t m = (n - 1) / 2;
  if (k < 2 || m % k != 0)
    throw std::invalid_argument("kernel_vector: k must divide (n-1)/2");
  if (std::gcd<std::uint64_t>(pm.log(c), n - 1) % k != 0)
    throw std::invalid_argument("kernel_vector: k must divide (n-1)/o(c)");
  const CycloField& F = fields.get(k);
  BlockLeaders lead = block_leaders(pm, c);
  KernelVector v;
  v.k = k;
  v.coords.reserve(lead.rows.size());
  for (std::uint32_t x : lead.rows)
    v.coords.push_back(F.sub(F.one(), F.root_power(pm.log(x))));
  return v;
}

KernelVector golden_ratio_kernel(const PrimeModulus& pm, std::uint32_t c,
                                 CycloFieldCache& fields) {
  const std::uint32_t n = pm.n();
  if (pm.add(pm.mul(c, c), pm.sub(c, 1)) != 0)
    throw std::invalid_argument(
        "golden_ratio_kernel: c^2 + c - 1 != 0 (mod n)");
  const unsigned k = (n - 1) / 2;
  const CycloField& F = fields.get(k);
  BlockLeaders lead = block_leaders(pm, c);
  // block of the pair {-c-1, -c} gets coordinate 0
  const std::uint32_t a = pm.neg(pm.add(c, 1)), b = pm.neg(c);
  KernelVector v;
  v.k = k;
  v.coords.reserve(lead.rows.size());
  bool zeroed = false;
  for (std::uint32_t x : lead.rows) {
    if (x == a || x == b) {
      v.coords.push_back(F.zero());
      zeroed = true;
    } else {
      v.coords.push_back(F.sub(F.one(), F.root_power(pm.log(x))));
    }
  }
  if (!zeroed)
    throw std::logic_error("golden_ratio_kernel: pair block not found");
  return v;
}

bool verify_left_kernel(const KernelVector& v, const McbMatrix& S,
                        CycloFieldCache& fields) {
  const CycloField& F = fields.get(v.k);
  CycloMatrix M = evaluate(S, v.k, F);
  if (v.coords.size() != M.rows) return false;
  bool any = false;
  for (const auto& e : v.coords)
    if (!F.is_zero(e)) any = true;
  return any && cyclo_left_kernel_check(F, v.coords, M);
}

namespace {

ClassificationRecord classify_fast(const PrimeModulus& pm, std::uint32_t c,
                                   CycloFieldCache& fields,
                                   std::uint64_t seed) {
  ClassificationRecord rec;
  rec.n = pm.n();
  rec.c = c;
  GcdCriterion gc = gcd_criterion(pm, c);
  rec.o_c = gc.o_c;
  rec.log_c = gc.log_c;
  rec.predicted = gc.predicted;
  McbMatrix S = build_S_polynomial(pm, c);
  SingularReport rep = is_singular_fast(S, fields, Strategy::Auto, seed);
  rec.singular = rep.singular;
  rec.witness_k = rep.witness_k;
  rec.codim =
      rep.singular ? codimension(S, fields, Strategy::Auto, seed, 1) : 0;
  rec.hypertree = !rep.singular;
  rec.method = Method::Fast;
  return rec;
}

ClassificationRecord classify_exact(const PrimeModulus& pm, std::uint32_t c,
                                    std::uint64_t seed) {
  ClassificationRecord rec;
  rec.n = pm.n();
  rec.c = c;
  GcdCriterion gc = gcd_criterion(pm, c);
  rec.o_c = gc.o_c;
  rec.log_c = gc.log_c;
  rec.predicted = gc.predicted;
  ComplexSpec spec{2, pm.n(), c};
  FaceSet fs = build_complex(spec);
  SignedSparseMatrix A = build_boundary(pm, c, fs);
  RankResult rr = boundary_rank(A, seed);
  rec.codim = static_cast<unsigned>(A.cols - rr.rank);
  rec.hypertree = rr.rank == A.cols;
  rec.singular = !rec.hypertree;
  rec.witness_k = 0;
  rec.method = Method::Exact;
  return rec;
}

}  // namespace

ClassificationRecord classify(std::uint32_t n, std::uint32_t c, Method method,
                              CycloFieldCache& fields, std::uint64_t seed) {
  if (!is_prime(n) || n < 11)
    throw std::invalid_argument("classify: n must be a prime >= 11");
  if (!is_eligible_c(n, c))
    throw std::invalid_argument("classify: c must lie in [2, n-3]");
  PrimeModulus pm(n);
  switch (method) {
    case Method::Fast:
      return classify_fast(pm, c, fields, mix64(seed, 0xfa57));
    case Method::Exact:
      return classify_exact(pm, c, mix64(seed, 0xe4ac7));
    case Method::Both: {
      ClassificationRecord f = classify_fast(pm, c, fields, mix64(seed, 0xfa57));
      ClassificationRecord e = classify_exact(pm, c, mix64(seed, 0xe4ac7));
      if (f.hypertree != e.hypertree || f.codim != e.codim)
        throw std::runtime_error("classify: fast and exact deciders disagree");
      f.method = Method::Both;
      return f;
    }
  }
  throw std::logic_error("classify: bad method");
}

std::vector<ClassificationRecord> scan_range(std::uint32_t n_min,
                                             std::uint32_t n_max,
                                             Method method, unsigned jobs,
                                             std::uint64_t seed) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> tasks;
  for (std::uint32_t n = std::max<std::uint32_t>(n_min, 11); n <= n_max; ++n) {
    if (!is_prime(n)) continue;
    for (std::uint32_t c : eligible_c(n)) tasks.emplace_back(n, c);
  }
  std::vector<ClassificationRecord> records(tasks.size());
  CycloFieldCache fields;
  parallel_for(tasks.size(), jobs, [&](std::size_t i) {
    auto [n, c] = tasks[i];
    records[i] = classify(n, c, method, fields, mix64(mix64(seed, n), c));
  });
  return records;
}

std::vector<RatioRow> ratio_rows(
    const std::vector<ClassificationRecord>& records) {
  std::vector<RatioRow> rows;
  for (const auto& rec : records) {
    if (rows.empty() || rows.back().n != rec.n) {
      rows.push_back(RatioRow{rec.n, 0, 0, 0});
    }
    RatioRow& row = rows.back();
    if (rec.hypertree)
      ++row.acyclic;
    else
      ++row.nonacyclic;
    if (rec.predicted) ++row.predicted;
  }
  return rows;
}

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string classification_csv(
    const std::vector<ClassificationRecord>& records) {
  std::string out = "n,c,o_c,log_c,predicted,codim,hypertree,witness_k\n";
  for (const auto& r : records) {
    out += std::to_string(r.n) + ',' + std::to_string(r.c) + ',' +
           std::to_string(r.o_c) + ',' + std::to_string(r.log_c) + ',' +
           (r.predicted ? "1," : "0,") + std::to_string(r.codim) + ',' +
           (r.hypertree ? "1," : "0,") +
           (r.witness_k ? std::to_string(r.witness_k) : "") + '\n';
  }
  return out;
}

std::string ratio_csv(const std::vector<RatioRow>& rows) {
  std::string out = "n,A_n,N_n,E_n,acyclic_ratio,nonacyclic_ratio,bound\n";
  for (const auto& r : rows) {
    const double m = (r.n - 1) / 2.0;
    const double bound =
        static_cast<double>(euler_phi((r.n - 1) / 2)) / m;
    out += std::to_string(r.n) + ',' + std::to_string(r.acyclic) + ',' +
           std::to_string(r.nonacyclic) + ',' + std::to_string(r.predicted) +
           ',' + fixed6(static_cast<double>(r.acyclic) / (r.n - 4)) + ',' +
           (r.predicted
                ? fixed6(static_cast<double>(r.nonacyclic) / r.predicted)
                : std::string()) +
           ',' + fixed6(bound) + '\n';
  }
  return out;
}

std::string table_csv(const std::vector<ClassificationRecord>& records,
                      std::uint32_t n_min, std::uint32_t n_max) {
  std::vector<std::uint32_t> ns;
  for (std::uint32_t n = std::max<std::uint32_t>(n_min, 11); n <= n_max; ++n)
    if (is_prime(n)) ns.push_back(n);
  std::map<std::pair<std::uint32_t, std::uint32_t>, const ClassificationRecord*>
      by_nc;
  for (const auto& r : records) by_nc[{r.n, r.c}] = &r;
  std::string out = "c";
  for (std::uint32_t n : ns) out += ',' + std::to_string(n);
  out += '\n';
  if (ns.empty()) return out;
  const std::uint32_t c_hi = n_max - 3;
  for (std::uint32_t c = 2; c <= c_hi; ++c) {
    out += std::to_string(c);
    for (std::uint32_t n : ns) {
      out += ',';
      if (!is_eligible_c(n, c)) {
        out += 'X';
        continue;
      }
      auto it = by_nc.find({n, c});
      if (it == by_nc.end())
        throw std::logic_error("table_csv: missing record");
      out += std::to_string(it->second->codim);
    }
    out += '\n';
  }
  return out;
}

std::string ratio_svg(const std::vector<RatioRow>& rows) {
  const double width = 800, height = 500;
  const double left = 70, right = 770, top = 30, bottom = 440;
  auto fmt = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };
  double n_lo = rows.empty() ? 0 : rows.front().n;
  double n_hi = rows.empty() ? 1 : rows.back().n;
  if (n_hi <= n_lo) n_hi = n_lo + 1;
  auto px = [&](double n) {
    return left + (n - n_lo) / (n_hi - n_lo) * (right - left);
  };
  auto py = [&](double v) { return bottom - v * (bottom - top); };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) +
       "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 800 500\">\n";
  s += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
  // axes
  s += "<line x1=\"" + fmt(left) + "\" y1=\"" + fmt(bottom) + "\" x2=\"" +
       fmt(right) + "\" y2=\"" + fmt(bottom) +
       "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  s += "<line x1=\"" + fmt(left) + "\" y1=\"" + fmt(top) + "\" x2=\"" +
       fmt(left) + "\" y2=\"" + fmt(bottom) +
       "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    double v = i / 5.0, y = py(v);
    s += "<line x1=\"" + fmt(left - 5) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
         fmt(left) + "\" y2=\"" + fmt(y) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fmt(left - 10) + "\" y=\"" + fmt(y + 4) +
         "\" font-size=\"12\" text-anchor=\"end\">" + fmt(v) + "</text>\n";
  }
  std::size_t step = rows.size() > 12 ? (rows.size() + 11) / 12 : 1;
  for (std::size_t i = 0; i < rows.size(); i += step) {
    double x = px(rows[i].n);
    s += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(bottom) + "\" x2=\"" +
         fmt(x) + "\" y2=\"" + fmt(bottom + 5) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(bottom + 20) +
         "\" font-size=\"12\" text-anchor=\"middle\">" +
         std::to_string(rows[i].n) + "</text>\n";
  }
  s += "<text x=\"420\" y=\"480\" font-size=\"13\" text-anchor=\"middle\">"
       "n</text>\n";
  s += "<text x=\"20\" y=\"235\" font-size=\"13\" text-anchor=\"middle\" "
       "transform=\"rotate(-90 20 235)\">fraction of eligible c</text>\n";
  // acyclic ratio A_n / (n - 4)
  std::string line1, line2;
  for (const auto& r : rows) {
    double v = static_cast<double>(r.acyclic) / (r.n - 4);
    double b = static_cast<double>(euler_phi((r.n - 1) / 2)) / ((r.n - 1) / 2);
    line1 += fmt(px(r.n)) + ',' + fmt(py(v)) + ' ';
    line2 += fmt(px(r.n)) + ',' + fmt(py(b)) + ' ';
  }
  s += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" "
       "points=\"" + line1 + "\"/>\n";
  s += "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" "
       "stroke-dasharray=\"6 3\" points=\"" + line2 + "\"/>\n";
  for (const auto& r : rows) {
    double v = static_cast<double>(r.acyclic) / (r.n - 4);
    s += "<circle cx=\"" + fmt(px(r.n)) + "\" cy=\"" + fmt(py(v)) +
         "\" r=\"3\" fill=\"#1f77b4\"/>\n";
  }
  s += "<text x=\"90\" y=\"45\" font-size=\"13\" fill=\"#1f77b4\">"
       "acyclic ratio A_n / (n - 4)</text>\n";
  s += "<text x=\"90\" y=\"65\" font-size=\"13\" fill=\"#d62728\">"
       "upper bound phi((n-1)/2) / ((n-1)/2)</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace hyperpath
