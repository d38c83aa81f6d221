// hyperpath: exact classification of the algebraic 2-complexes X_{n,c},
// range scans, table/figure regeneration, kernel verification, benchmarks.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hyperpath/analysis.hpp"
#include "hyperpath/boundary.hpp"
#include "hyperpath/cyclo.hpp"
#include "hyperpath/fullmatrix.hpp"
#include "hyperpath/mcb.hpp"
#include "hyperpath/modp.hpp"
#include "hyperpath/numtheory.hpp"
#include "hyperpath/ratlinalg.hpp"
#include "hyperpath/scomplex.hpp"
#include "hyperpath/util.hpp"

namespace hp = hyperpath;
using nlohmann::json;

namespace {

void check_nc(std::uint32_t n, std::uint32_t c) {
  if (!hp::is_prime(n) || n < 11)
    throw std::invalid_argument("n must be a prime >= 11");
  if (c >= n) throw std::invalid_argument("c must lie in [0, n-1]");
  if (c == 0) throw std::invalid_argument("c = 0 is ineligible");
  if (c == 1)
    throw std::invalid_argument(
        "c = 1 is ineligible (the c-position of a face is not unique)");
  if (c == n - 1) throw std::invalid_argument("c = -1 (mod n) is ineligible");
  if (c == n - 2) throw std::invalid_argument("c = -2 (mod n) is ineligible");
}

hp::Method method_of(const std::string& s) {
  if (s == "fast") return hp::Method::Fast;
  if (s == "exact") return hp::Method::Exact;
  if (s == "both") return hp::Method::Both;
  throw std::invalid_argument("method must be one of fast|exact|both");
}

const char* method_name(hp::Method m) {
  switch (m) {
    case hp::Method::Fast: return "fast";
    case hp::Method::Exact: return "exact";
    case hp::Method::Both: return "both";
  }
  return "?";
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << content;
  if (!f) throw std::runtime_error("short write: " + path);
}

json record_json(const hp::ClassificationRecord& r) {
  return json{{"n", r.n},
              {"c", r.c},
              {"o_c", r.o_c},
              {"log_c", r.log_c},
              {"predicted", r.predicted},
              {"singular", r.singular},
              {"witness_k", r.witness_k},
              {"codim", r.codim},
              {"hypertree", r.hypertree},
              {"method", method_name(r.method)}};
}

json s_dump_json(const hp::PrimeModulus& pm, std::uint32_t c) {
  hp::BlockLeaders lead = hp::block_leaders(pm, c);
  hp::McbMatrix S = hp::build_S_polynomial(pm, c);
  json blocks = json::array();
  for (const auto& [ij, poly] : S.blocks()) {
    json p = json::array();
    for (const auto& q : poly) {
      if (q.get_den() != 1)
        throw std::logic_error("S dump: non-integer coefficient");
      p.push_back(static_cast<std::int64_t>(q.get_num().get_si()));
    }
    blocks.push_back(json{{"row_leader", lead.rows[ij.first]},
                          {"col_leader", lead.cols[ij.second]},
                          {"poly", p}});
  }
  return json{{"n", pm.n()}, {"c", c}, {"blocks", blocks}};
}

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

/* *** subcommand bodies *** */

int run_classify(std::uint32_t n, std::uint32_t c, const std::string& method,
                 std::uint64_t seed, const std::string& dump_s) {
  check_nc(n, c);
  hp::CycloFieldCache fields;
  hp::ClassificationRecord rec =
      hp::classify(n, c, method_of(method), fields, seed);
  std::cout << record_json(rec).dump() << "\n";
  if (!dump_s.empty()) {
    hp::PrimeModulus pm(n);
    write_output(dump_s, s_dump_json(pm, c).dump() + "\n");
  }
  return 0;
}

int run_scan(std::uint32_t lo, std::uint32_t hi, const std::string& method,
             unsigned jobs, std::uint64_t seed, const std::string& out) {
  if (lo < 11) throw std::invalid_argument("min must be >= 11");
  if (hi > 1500) throw std::invalid_argument("max must be <= 1500");
  auto records =
      hp::scan_range(lo, hi, method_of(method), hp::resolve_jobs(jobs), seed);
  write_output(out, hp::classification_csv(records));
  return 0;
}

int run_table(std::uint32_t lo, std::uint32_t hi, unsigned jobs,
              std::uint64_t seed, const std::string& out) {
  if (lo < 11) throw std::invalid_argument("min must be >= 11");
  if (hi > 1500) throw std::invalid_argument("max must be <= 1500");
  auto records =
      hp::scan_range(lo, hi, hp::Method::Fast, hp::resolve_jobs(jobs), seed);
  write_output(out, hp::table_csv(records, lo, hi));
  return 0;
}

int run_ratios(std::uint32_t lo, std::uint32_t hi, unsigned jobs,
               std::uint64_t seed, const std::string& out,
               const std::string& svg) {
  if (lo < 11) throw std::invalid_argument("min must be >= 11");
  if (hi > 1500) throw std::invalid_argument("max must be <= 1500");
  auto records =
      hp::scan_range(lo, hi, hp::Method::Fast, hp::resolve_jobs(jobs), seed);
  auto rows = hp::ratio_rows(records);
  write_output(out, hp::ratio_csv(rows));
  if (!svg.empty()) write_output(svg, hp::ratio_svg(rows));
  return 0;
}

int run_verify_kernel(std::uint32_t n, std::uint32_t c, unsigned k) {
  check_nc(n, c);
  hp::PrimeModulus pm(n);
  const std::uint32_t m = (n - 1) / 2;
  bool order_family =
      k >= 2 && m % k == 0 &&
      std::gcd<std::uint64_t>(pm.log(c), n - 1) % k == 0;
  bool quad_family =
      pm.add(pm.mul(c, c), pm.sub(c, 1)) == 0 && k == m && k >= 2;
  if (!order_family && !quad_family)
    throw std::invalid_argument(
        "k is not a valid conductor: need k >= 2 with k | gcd(log c, "
        "(n-1)/2), or c^2+c-1 = 0 (mod n) with k = (n-1)/2");
  hp::CycloFieldCache fields;
  hp::KernelVector v = order_family
                           ? hp::kernel_vector(pm, c, k, fields)
                           : hp::golden_ratio_kernel(pm, c, fields);
  hp::McbMatrix S = hp::build_S_polynomial(pm, c);
  bool ok = hp::verify_left_kernel(v, S, fields);
  json outj{{"n", n},
            {"c", c},
            {"k", k},
            {"family", order_family ? "order" : "quadratic"},
            {"verified", ok}};
  std::cout << outj.dump() << "\n";
  return ok ? 0 : 1;
}

int run_fullrank(std::uint32_t n, std::uint32_t c, std::uint64_t seed) {
  check_nc(n, c);
  hp::PrimeModulus pm(n);
  hp::FullRankReport rep = hp::rank_full(pm, c, seed);
  hp::CycloFieldCache fields;
  hp::ClassificationRecord rec =
      hp::classify(n, c, hp::Method::Fast, fields, seed);
  bool implication = !rep.full || rec.hypertree;
  std::string csv = "n,c,rank_F,full,hypertree,implication_holds\n";
  csv += std::to_string(n) + ',' + std::to_string(c) + ',' +
         std::to_string(rep.rank) + ',' + (rep.full ? "1," : "0,") +
         (rec.hypertree ? "1," : "0,") + (implication ? "1" : "0") + '\n';
  std::cout << csv;
  return 0;
}

int run_bench(const std::vector<std::uint32_t>& ns, unsigned reps,
              std::uint64_t seed, const std::string& out) {
  if (reps == 0) throw std::invalid_argument("reps must be >= 1");
  std::string csv = "n,method,median_ms\n";
  hp::CycloFieldCache fields;
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
  };
  for (std::uint32_t n : ns) {
    if (!hp::is_prime(n) || n < 11)
      throw std::invalid_argument("bench: n must be a prime >= 11");
    hp::PrimeModulus pm(n);
    // smallest eligible c whose fast decision is nonsingular, so that the
    // exact-rank method takes its two-prime accelerated path
    std::uint32_t c = 0;
    for (std::uint32_t cc : hp::eligible_c(n)) {
      hp::McbMatrix S = hp::build_S_polynomial(pm, cc);
      if (!hp::is_singular_fast(S, fields, hp::Strategy::Auto,
                                hp::mix64(seed, cc))
               .singular) {
        c = cc;
        break;
      }
    }
    if (c == 0) throw std::runtime_error("bench: no acyclic c found");
    hp::FaceSet fs = hp::build_complex(hp::ComplexSpec{2, n, c});
    hp::SignedSparseMatrix A = hp::build_boundary(pm, c, fs);
    hp::modp::PrimeStream ps(hp::mix64(seed, n), 1);
    std::vector<double> t_fast, t_exact, t_modp;
    std::vector<std::uint32_t> a(A.rows * A.cols);
    for (unsigned rep = 0; rep < reps; ++rep) {
      {
        hp::Timer tm;
        hp::McbMatrix S = hp::build_S_polynomial(pm, c);
        auto r = hp::is_singular_fast(S, fields, hp::Strategy::Auto,
                                      hp::mix64(seed, 1000 + rep));
        t_fast.push_back(tm.ms());
        if (r.singular) throw std::runtime_error("bench: verdict changed");
      }
      {
        hp::Timer tm;
        hp::RankResult rr = hp::boundary_rank(A, hp::mix64(seed, 2000 + rep));
        t_exact.push_back(tm.ms());
        if (rr.rank != A.cols)
          throw std::runtime_error("bench: exact rank disagrees");
      }
      {
        std::uint32_t q = ps.next();
        hp::Timer tm;
        std::fill(a.begin(), a.end(), 0);
        for (std::size_t j = 0; j < A.cols; ++j)
          for (const auto& e : A.col_entries[j])
            a[static_cast<std::size_t>(e.row) * A.cols + j] =
                e.sign > 0 ? 1u : q - 1;
        std::size_t rk = hp::modp::rank_mod_p(a, A.rows, A.cols, q);
        t_modp.push_back(tm.ms());
        if (rk != A.cols)
          throw std::runtime_error("bench: mod-p verdict disagrees");
      }
    }
    csv += std::to_string(n) + ",fast," + fixed3(median(t_fast)) + '\n';
    csv += std::to_string(n) + ",exact-rank," + fixed3(median(t_exact)) + '\n';
    csv += std::to_string(n) + ",modp-rank," + fixed3(median(t_modp)) + '\n';
  }
  write_output(out, csv);
  return 0;
}

/* *** selftest *** */

int run_selftest(bool verbose, const std::string& golden_dir,
                 std::uint64_t seed) {
  int failures = 0;
  std::string first;
  auto check = [&](const std::string& name, bool ok) {
    if (ok) {
      if (verbose) std::cout << "ok: " << name << "\n";
    } else {
      ++failures;
      if (first.empty()) first = name;
      std::cout << "FAIL: " << name << "\n";
    }
  };

  hp::PrimeModulus pm(13);
  const std::uint32_t c = 5;
  hp::CycloFieldCache fields;

  // face facts
  hp::FaceSet fs = hp::build_complex(hp::ComplexSpec{2, 13, c});
  check("face count 66", fs.size() == 66 &&
                             hp::count_faces(hp::ComplexSpec{2, 13, c}) == 66);
  check("face {0,1,5}", fs.contains({0, 1, 5}));
  check("face {2,3,12}", fs.contains({2, 3, 12}));
  check("face {2,3,9}", fs.contains({2, 3, 9}));
  check("non-face {1,2,3}", !fs.contains({1, 2, 3}));
  check("edge {1,5} in 3 faces", hp::cofacet_degree(fs, {1, 5}) == 3);
  check("edge {1,4} in 2 faces", hp::cofacet_degree(fs, {1, 4}) == 2);

  // log / order table, lambda = 2
  check("primitive root 2", pm.lambda() == 2);
  {
    const std::uint32_t xs[12] = {1, 2, 4, 8, 3, 6, 12, 11, 9, 5, 10, 7};
    const std::uint32_t os[12] = {1, 12, 6, 4, 3, 12, 2, 12, 3, 4, 6, 12};
    bool ok = true;
    for (unsigned l = 0; l < 12; ++l)
      ok = ok && pm.log(xs[l]) == l && pm.order(xs[l]) == os[l] &&
           pm.exp(l) == xs[l];
    check("log/order table", ok);
  }

  // S block structure
  hp::BlockLeaders lead = hp::block_leaders(pm, c);
  check("row leaders (1,2),(1,4),(1,8),(1,3),(1,6)",
        lead.rows == std::vector<std::uint32_t>({2, 4, 8, 3, 6}));
  check("col leaders (1,4,12),(1,8,6),(1,3,7),(1,6,9),(1,0,5)",
        lead.cols == std::vector<std::uint32_t>({4, 8, 3, 6, 0}));
  hp::McbMatrix S = hp::build_S_polynomial(pm, c);
  check("S is 60x60 in 12x12 blocks", S.r() == 12 && S.t() == 5);
  {
    // (block row, block col) -> (sign, exponent); all other blocks zero
    struct Cell {
      unsigned i, j;
      int sign;
      unsigned e;
    };
    const Cell cells[12] = {{0, 2, 1, 11}, {1, 0, 1, 0}, {1, 1, 1, 3},
                            {2, 1, 1, 0},  {2, 3, 1, 5}, {2, 4, 1, 9},
                            {3, 0, 1, 2},  {3, 2, 1, 0}, {3, 3, 1, 8},
                            {4, 1, -1, 0}, {4, 2, -1, 11}, {4, 3, 1, 0}};
    bool ok = true;
    for (unsigned i = 0; i < 5 && ok; ++i)
      for (unsigned j = 0; j < 5 && ok; ++j) {
        const Cell* want = nullptr;
        for (const auto& cl : cells)
          if (cl.i == i && cl.j == j) want = &cl;
        const auto* blk = S.block(i, j);
        if (!want) {
          if (blk)
            for (const auto& q : *blk) ok = ok && q == 0;
          continue;
        }
        if (!blk) {
          ok = false;
          break;
        }
        for (unsigned e = 0; e < 12; ++e)
          ok = ok && (*blk)[e] == (e == want->e ? want->sign : 0);
      }
    check("S block table (12 monomial blocks)", ok);
    check("B[3,4] = P^2", [&] {
      const auto* blk = S.block(3, 0);
      if (!blk) return false;
      for (unsigned e = 0; e < 12; ++e)
        if ((*blk)[e] != (e == 2 ? 1 : 0)) return false;
      return true;
    }());
  }

  // evaluation at omega_3 and the explicit kernel vector
  {
    const hp::CycloField& F = fields.get(3);
    hp::CycloMatrix E = hp::evaluate(S, 3, F);
    auto mono = [&](int sign, unsigned e) {
      auto w = F.root_power(e);
      if (sign < 0) w = F.neg(w);
      return w;
    };
    bool ok = F.equal(E.at(0, 2), mono(1, 2)) &&
              F.equal(E.at(1, 0), F.one()) && F.equal(E.at(1, 1), F.one()) &&
              F.equal(E.at(2, 1), F.one()) &&
              F.equal(E.at(2, 3), mono(1, 2)) &&
              F.equal(E.at(2, 4), F.one()) &&
              F.equal(E.at(3, 0), mono(1, 2)) &&
              F.equal(E.at(3, 2), F.one()) &&
              F.equal(E.at(3, 3), mono(1, 2)) &&
              F.equal(E.at(4, 1), mono(-1, 0)) &&
              F.equal(E.at(4, 2), mono(-1, 2)) &&
              F.equal(E.at(4, 3), F.one());
    check("S(omega_3) table", ok);

    hp::KernelVector v = hp::kernel_vector(pm, c, 3, fields);
    bool vok = v.coords.size() == 5 && F.is_zero(v.coords[2]);
    vok = vok && F.equal(v.coords[0], F.sub(F.one(), F.root_power(1)));
    vok = vok && F.equal(v.coords[1], F.sub(F.one(), F.root_power(2)));
    vok = vok && F.equal(v.coords[3], F.sub(F.one(), F.root_power(1)));
    vok = vok && F.equal(v.coords[4], F.sub(F.one(), F.root_power(2)));
    check("kernel vector v_{13,3} coordinates", vok);
    check("v_{13,3} * S(omega_3) = 0", hp::verify_left_kernel(v, S, fields));
  }

  // classification verdicts
  {
    hp::ClassificationRecord rec =
        hp::classify(13, 5, hp::Method::Fast, fields, seed);
    check("classify(13,5): non-hypertree, witness 3, predicted",
          !rec.hypertree && rec.singular && rec.witness_k == 3 &&
              rec.predicted);
    hp::ClassificationRecord rec2 =
        hp::classify(13, 2, hp::Method::Both, fields, seed);
    check("classify(13,2): hypertree, fast == exact", rec2.hypertree);
  }

  // random MCB instances against the dense exact oracle
  {
    hp::SplitMix rng(hp::mix64(seed, 0x5e1f));
    bool ok = true;
    for (int inst = 0; inst < 100 && ok; ++inst) {
      unsigned r = 1 + static_cast<unsigned>(rng.below(12));
      unsigned t = 1 + static_cast<unsigned>(rng.below(6));
      hp::McbMatrix m(r, t);
      for (unsigned bi = 0; bi < t; ++bi)
        for (unsigned bj = 0; bj < t; ++bj) {
          if (rng.below(100) < 30) continue;
          std::vector<mpq_class> poly(r, mpq_class(0));
          bool nz = false;
          for (unsigned e = 0; e < r; ++e) {
            int val = static_cast<int>(rng.below(7)) - 3;
            poly[e] = val;
            nz = nz || val != 0;
          }
          if (nz) m.set_block(bi, bj, std::move(poly));
        }
      std::size_t rt = static_cast<std::size_t>(r) * t;
      auto dense = m.to_dense();
      hp::IntMatrix im(rt, rt);
      for (std::size_t idx = 0; idx < dense.size(); ++idx)
        im.a[idx] = dense[idx].get_num();
      std::size_t rk = hp::bareiss_rank(std::move(im));
      auto rep = hp::is_singular_fast(m, fields, hp::Strategy::Auto,
                                      hp::mix64(seed, 7000 + inst));
      unsigned cod = hp::codimension(m, fields, hp::Strategy::Auto,
                                     hp::mix64(seed, 8000 + inst), 1);
      ok = rep.singular == (rk < rt) && cod == rt - rk;
    }
    check("random MCB suite vs dense oracle (100 instances)", ok);
  }

  // optional golden-file comparison
  if (!golden_dir.empty()) {
    auto slurp = [](const std::string& path) -> std::string {
      std::ifstream f(path, std::ios::binary);
      if (!f) return {};
      std::ostringstream ss;
      ss << f.rdbuf();
      return ss.str();
    };
    {
      std::string path = golden_dir + "/s_13_5.json";
      std::string want = slurp(path);
      std::string got = s_dump_json(pm, c).dump() + "\n";
      check("golden file " + path, !want.empty() && want == got);
    }
    {
      std::string path = golden_dir + "/table_11_59.csv";
      std::string want = slurp(path);
      auto records = hp::scan_range(11, 59, hp::Method::Fast,
                                    hp::resolve_jobs(0), 1);
      std::string got = hp::table_csv(records, 11, 59);
      check("golden file " + path, !want.empty() && want == got);
    }
  }

  if (failures) {
    std::cerr << "selftest: " << failures << " failure(s); first: " << first
              << "\n";
    return 1;
  }
  if (verbose) std::cout << "selftest: all checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact classifier for the algebraic 2-complexes X_{n,c}"};
  app.require_subcommand(1);

  std::uint32_t n = 0, c = 0, lo = 11, hi = 59;
  unsigned k = 0, jobs = 0, reps = 1;
  std::uint64_t seed = 1;
  std::string method = "fast", out, svg, dump_s, golden_dir;
  std::vector<std::uint32_t> n_list = {59, 101, 199};
  bool verbose = false;

  auto* s_classify = app.add_subcommand("classify", "decide one (n, c)");
  s_classify->add_option("--n", n, "prime modulus")->required();
  s_classify->add_option("--c", c, "coefficient")->required();
  s_classify->add_option("--method", method, "fast|exact|both")
      ->default_val("fast");
  s_classify->add_option("--seed", seed, "rng seed")->default_val(1);
  s_classify->add_option("--dump-s", dump_s, "write S block map JSON here");

  auto* s_scan = app.add_subcommand("scan", "classify a prime range");
  s_scan->add_option("--min", lo)->default_val(11);
  s_scan->add_option("--max", hi)->required();
  s_scan->add_option("--method", method)->default_val("fast");
  s_scan->add_option("--jobs", jobs, "workers (0 = HYPERPATH_JOBS or 1)")
      ->default_val(0);
  s_scan->add_option("--seed", seed)->default_val(1);
  s_scan->add_option("--out", out, "output file (default stdout)");

  auto* s_table = app.add_subcommand("table", "codimension matrix CSV");
  s_table->add_option("--min", lo)->default_val(11);
  s_table->add_option("--max", hi)->default_val(59);
  s_table->add_option("--jobs", jobs)->default_val(0);
  s_table->add_option("--seed", seed)->default_val(1);
  s_table->add_option("--out", out);

  auto* s_ratios = app.add_subcommand("ratios", "acyclic-ratio statistics");
  s_ratios->add_option("--min", lo)->default_val(11);
  s_ratios->add_option("--max", hi)->required();
  s_ratios->add_option("--jobs", jobs)->default_val(0);
  s_ratios->add_option("--seed", seed)->default_val(1);
  s_ratios->add_option("--out", out);
  s_ratios->add_option("--svg", svg, "also write an SVG plot here");

  auto* s_vk = app.add_subcommand("verify-kernel", "check a kernel vector");
  s_vk->add_option("--n", n)->required();
  s_vk->add_option("--c", c)->required();
  s_vk->add_option("--k", k, "conductor")->required();

  auto* s_fr = app.add_subcommand("fullrank", "rank of the pair matrix F");
  s_fr->add_option("--n", n)->required();
  s_fr->add_option("--c", c)->required();
  s_fr->add_option("--seed", seed)->default_val(1);

  auto* s_bench = app.add_subcommand("bench", "timing comparison");
  s_bench->add_option("--n-list", n_list)->delimiter(',');
  s_bench->add_option("--reps", reps)->default_val(1);
  s_bench->add_option("--seed", seed)->default_val(1);
  s_bench->add_option("--out", out);

  auto* s_self = app.add_subcommand("selftest", "built-in golden suite");
  s_self->add_flag("--verbose", verbose, "list each fact checked");
  s_self->add_option("--golden-dir", golden_dir,
                     "also byte-compare the golden files in this directory");
  s_self->add_option("--seed", seed)->default_val(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(s_classify))
      return run_classify(n, c, method, seed, dump_s);
    if (app.got_subcommand(s_scan))
      return run_scan(lo, hi, method, jobs, seed, out);
    if (app.got_subcommand(s_table)) return run_table(lo, hi, jobs, seed, out);
    if (app.got_subcommand(s_ratios))
      return run_ratios(lo, hi, jobs, seed, out, svg);
    if (app.got_subcommand(s_vk)) return run_verify_kernel(n, c, k);
    if (app.got_subcommand(s_fr)) return run_fullrank(n, c, seed);
    if (app.got_subcommand(s_bench)) return run_bench(n_list, reps, seed, out);
    if (app.got_subcommand(s_self))
      return run_selftest(verbose, golden_dir, seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
