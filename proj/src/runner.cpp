#include "homlab/runner.hpp"

#include <chrono>
#include <filesystem>
#include <random>
#include <sstream>

#include "homlab/cover.hpp"
#include "homlab/presentation.hpp"

namespace homlab {

namespace {

using Clock = std::chrono::steady_clock;

long elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

std::string fmt(long long v) { return std::to_string(v); }

ZlVector random_vec(const LatticeParams& p, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> d(0, std::uint32_t(p.count - 1));
  return ZlVector::from_index(p, d(rng));
}

// ---------------------------------------------------------------- lattice --

std::vector<Check> lattice_checks(const SuiteConfig& cfg) {
  auto p = LatticeParams::make(cfg.g, cfg.L);
  std::mt19937_64 rng(cfg.seed);
  std::vector<Check> out;

  {
    auto all = enumerate_vectors(p, 1u << 20);
    bool ok = all.size() == p.count;
    for (std::uint32_t i = 0; ok && i < all.size(); ++i) ok = all[i].index() == i;
    out.push_back(make_check("lattice.enumeration", ok, fmt(long(p.count)) + " vectors in index order",
                             fmt(long(all.size())), "exact"));
  }
  {
    bool ok = true;
    for (int j = 0; j < p.g; ++j)
      ok = ok && pairing(ZlVector::basis_a(p, j), ZlVector::basis_b(p, j)) == 1;
    long checked = 0, bad = 0;
    for (long t = 0; t < cfg.sample_count; ++t) {
      auto x = random_vec(p, rng), y = random_vec(p, rng), z = random_vec(p, rng);
      if ((pairing(x, y) + pairing(y, x)) % p.L != 0) ++bad;
      if (pairing(x + y, z) != (pairing(x, z) + pairing(y, z)) % p.L) ++bad;
      ++checked;
    }
    out.push_back(make_check("lattice.pairing", ok && bad == 0,
                             "i(a_j, b_j) = 1; antisymmetric and bilinear",
                             fmt(checked) + " random triples, " + fmt(bad) + " failures",
                             "exact"));
  }
  {
    long bad = 0;
    for (std::uint32_t i = 1; i < p.count; ++i) {
      ZlVector v = ZlVector::from_index(p, i);
      if ((content(v) == 1) != is_unimodular({v})) ++bad;
    }
    out.push_back(make_check("lattice.content-unimodular", bad == 0,
                             "content 1 iff unimodular, all nonzero vectors",
                             fmt(long(p.count - 1)) + " vectors, " + fmt(bad) + " failures",
                             "exact"));
  }
  {
    auto pairs = enumerate_iso_uni_pairs(p, 1u << 20);
    long bad = 0;
    for (const auto& [w1, w2] : pairs)
      if (!is_isotropic({w1, w2}) || !is_unimodular({w1, w2})) ++bad;
    out.push_back(make_check("lattice.iso-uni-pairs", bad == 0,
                             "all enumerated pairs pass both predicates",
                             fmt(long(pairs.size())) + " pairs, " + fmt(bad) + " failures",
                             "exact"));
  }
  {
    auto gens = all_transvections(p);
    long bad = 0, checked = 0;
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    for (long t = 0; t < cfg.sample_count; ++t) {
      auto x = random_vec(p, rng), y = random_vec(p, rng);
      const auto& tv = gens[pick(rng)];
      if (pairing(tv.apply(x), tv.apply(y)) != pairing(x, y)) ++bad;
      ++checked;
    }
    out.push_back(make_check("lattice.transvections", bad == 0,
                             "transvections preserve the pairing",
                             fmt(checked) + " random pairs, " + fmt(bad) + " failures",
                             "exact"));
  }
  {
    int orbits = sp_orbit_count_bfs(p, 1u << 12);
    out.push_back(make_check("lattice.orbit-count", orbits == tau(p.L),
                             "tau(" + fmt(p.L) + ") = " + fmt(tau(p.L)), fmt(orbits),
                             "exact"));
    auto label = sp_orbit_labels(p, 1u << 12);
    long bad = 0;
    std::vector<int> content_of(p.count);
    for (std::uint32_t i = 0; i < p.count; ++i)
      content_of[i] = content(ZlVector::from_index(p, i));
    for (std::uint32_t i = 0; i < p.count; ++i)
      for (std::uint32_t j = i + 1; j < p.count; ++j)
        if ((label[i] == label[j]) != (content_of[i] == content_of[j])) ++bad;
    out.push_back(make_check("lattice.orbit-content", bad == 0,
                             "orbits coincide with content classes", fmt(bad) + " mismatches",
                             "exact"));
  }
  return out;
}

// ------------------------------------------------------------------- ring --

std::vector<Check> ring_checks(const SuiteConfig& cfg) {
  auto p = LatticeParams::make(cfg.g, cfg.L);
  std::mt19937_64 rng(cfg.seed + 1);
  std::vector<Check> out;
  std::uniform_int_distribution<std::uint32_t> idx(0, std::uint32_t(p.count - 1));
  std::uniform_int_distribution<int> val(-3, 3);
  auto random_elt = [&] {
    GroupRingElement e(p);
    for (int t = 0; t < 5; ++t) e.add_term(idx(rng), Rat(val(rng)));
    return e;
  };

  {
    long bad = 0, n = std::min<long>(cfg.sample_count, 200);
    for (long t = 0; t < n; ++t) {
      auto a = random_elt(), b = random_elt(), c = random_elt();
      if ((a * b) * c != a * (b * c)) ++bad;
      if (a * (b + c) != a * b + a * c) ++bad;
      if (augmentation(a * b) != augmentation(a) * augmentation(b)) ++bad;
      auto v = random_vec(p, rng);
      if (GroupRingElement::basis(p, v) * GroupRingElement::basis(p, -v) !=
          GroupRingElement::basis(p, ZlVector::zero(p)))
        ++bad;
    }
    out.push_back(make_check("ring.axioms", bad == 0,
                             "associativity, distributivity, units, multiplicative augmentation",
                             fmt(n) + " random triples, " + fmt(bad) + " failures", "exact"));
  }
  {
    auto theta = GroupRingElement::theta(p);
    long bad = 0, n = std::min<long>(cfg.sample_count, 100);
    for (long t = 0; t < n; ++t) {
      auto e = random_elt();
      if (theta * e != theta.scaled(augmentation(e))) ++bad;
      if (theta.translated(random_vec(p, rng)) != theta) ++bad;
      auto d = decompose(e);
      if (d.trivial + d.ideal != e || sgn(augmentation(d.ideal)) != 0) ++bad;
      auto dd = decompose(d.ideal);
      if (!dd.trivial.is_zero() || dd.ideal != d.ideal) ++bad;
    }
    out.push_back(make_check("ring.theta-and-decompose", bad == 0,
                             "theta invariant; decomposition splits and is idempotent",
                             fmt(n) + " random elements, " + fmt(bad) + " failures",
                             "exact"));
  }
  {
    auto pairs = enumerate_iso_uni_pairs(p, 1u << 20);
    if (pairs.empty()) {
      out.push_back(make_check("ring.psi-formula", true, "vacuous (no valid pairs)",
                               "rank-2 lattice has no isotropic unimodular pairs", "exact"));
    } else {
      long bad = 0, n = std::min<long>(cfg.sample_count, 100);
      std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
      for (long t = 0; t < n; ++t) {
        const auto& [w1, w2] = pairs[pick(rng)];
        auto v = random_vec(p, rng);
        if (psi_image(v, w1, w2) != psi_image(v, w2, w1)) ++bad;
        if (sgn(augmentation(psi_image(v, w1, w2))) != 0) ++bad;
      }
      const auto& [w1, w2] = pairs.front();
      GroupRingElement total(p);
      for (std::uint32_t v = 0; v < p.count; ++v)
        total = total + psi_image(ZlVector::from_index(p, v), w1, w2);
      if (!total.is_zero()) ++bad;
      out.push_back(make_check("ring.psi-formula", bad == 0,
                               "symmetric, augmentation 0, translate sum 0",
                               fmt(n) + " samples, " + fmt(bad) + " failures", "exact"));
    }
  }
  {
    long bad = 0, n = std::min<long>(cfg.sample_count, 200);
    for (long t = 0; t < n; ++t) {
      auto f = random_vec(p, rng), x = random_vec(p, rng);
      auto y = random_vec(p, rng), z = random_vec(p, rng);
      if (sgn(augmentation(boundary_T2(f, y, z))) != 0) ++bad;
      if (sgn(augmentation(boundary_T3(f, x, y, z))) != 0) ++bad;
      if (boundary_T3(f + x, x, y, z) != boundary_T3(f, x, y, z)) ++bad;
    }
    out.push_back(make_check("ring.boundary-formulas", bad == 0,
                             "augmentation 0; T3 invariant under f -> f + x",
                             fmt(n) + " samples, " + fmt(bad) + " failures", "exact"));
  }
  {
    long checked = 0, bad = 0;
    bool exhaustive = p.count <= 16;
    if (exhaustive) {
      for (std::uint32_t f = 0; f < p.count; ++f)
        for (std::uint32_t y = 0; y < p.count; ++y)
          for (std::uint32_t z = 0; z < p.count; ++z) {
            if (!verify_case3_cancellation(ZlVector::from_index(p, f),
                                           ZlVector::from_index(p, y),
                                           ZlVector::from_index(p, z)))
              ++bad;
            ++checked;
          }
    } else {
      long n = std::max<long>(cfg.sample_count, 1000);
      for (long t = 0; t < n; ++t) {
        if (!verify_case3_cancellation(random_vec(p, rng), random_vec(p, rng),
                                       random_vec(p, rng)))
          ++bad;
        ++checked;
      }
    }
    out.push_back(make_check("ring.case3-cancellation", bad == 0, "all sums vanish",
                             fmt(checked) + (exhaustive ? " exhaustive" : " sampled") +
                                 " triples, " + fmt(bad) + " failures",
                             "exact"));
  }
  {
    long checked = 0, bad = 0;
    bool exhaustive = p.count <= 9;
    if (exhaustive) {
      for (std::uint32_t f = 0; f < p.count; ++f)
        for (std::uint32_t x = 0; x < p.count; ++x)
          for (std::uint32_t y = 0; y < p.count; ++y)
            for (std::uint32_t z = 0; z < p.count; ++z) {
              if (!verify_case4_telescoping(
                      ZlVector::from_index(p, f), ZlVector::from_index(p, x),
                      ZlVector::from_index(p, y), ZlVector::from_index(p, z)))
                ++bad;
              ++checked;
            }
    } else {
      long n = std::max<long>(cfg.sample_count, 1000);
      for (long t = 0; t < n; ++t) {
        if (!verify_case4_telescoping(random_vec(p, rng), random_vec(p, rng),
                                      random_vec(p, rng), random_vec(p, rng)))
          ++bad;
        ++checked;
      }
    }
    out.push_back(make_check("ring.case4-telescoping", bad == 0, "all double sums vanish",
                             fmt(checked) + (exhaustive ? " exhaustive" : " sampled") +
                                 " tuples, " + fmt(bad) + " failures",
                             "exact"));
  }
  return out;
}

// -------------------------------------------------------------------- fox --

std::vector<Check> fox_checks(const SuiteConfig& cfg, MatrixCache& cache) {
  auto p = LatticeParams::make(cfg.g, cfg.L);
  std::mt19937_64 rng(cfg.seed + 2);
  std::vector<Check> out;

  auto random_word = [&](int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> gen(0, p.dims() - 1);
    std::vector<int> letters;
    int target = len(rng);
    while (int(letters.size()) < target) {
      int letter = (rng() % 2 ? 1 : -1) * (gen(rng) + 1);
      if (!letters.empty() && letters.back() == -letter) continue;
      letters.push_back(letter);
    }
    return FreeWord(p, std::move(letters));
  };

  {
    long bad = 0, n = std::min<long>(cfg.sample_count, 200);
    auto alpha = FreeWord::generator(p, 0);
    if (fox_derivative(alpha, 0) != GroupRingElement::basis(p, ZlVector::zero(p))) ++bad;
    if (fox_derivative(alpha.inverse(), 0) !=
        -GroupRingElement::basis(p, -ZlVector::basis_a(p, 0)))
      ++bad;
    for (long t = 0; t < n; ++t) {
      auto u = random_word(6), v = random_word(6);
      for (int j = 0; j < p.dims(); ++j)
        if (fox_derivative(u * v, j) !=
            fox_derivative(u, j) + fox_derivative(v, j).translated(u.abelianize()))
          ++bad;
    }
    out.push_back(make_check("fox.derivative", bad == 0,
                             "axioms and product rule",
                             fmt(n) + " random word pairs, " + fmt(bad) + " failures",
                             "exact"));
  }
  {
    long bad = 0, n = 500;
    for (long t = 0; t < n; ++t) {
      auto w = random_word(8);
      GroupRingElement acc(p);
      for (int j = 0; j < p.dims(); ++j) {
        auto d = fox_derivative(w, j);
        acc = acc + d.translated(ZlVector::basis(p, j)) - d;
      }
      auto expect = GroupRingElement::basis(p, w.abelianize()) -
                    GroupRingElement::basis(p, ZlVector::zero(p));
      if (acc != expect) ++bad;
    }
    out.push_back(make_check("fox.fundamental-identity", bad == 0,
                             "sum_j dw/dx_j (x_j - 1) = w - 1", fmt(n) + " words, " +
                                 fmt(bad) + " failures", "exact"));
  }

  auto closed = CoverComplex::build(p, true);
  auto bounded = CoverComplex::build(p, false);
  if (cache.enabled()) {
    cache.get_or_build("cover_closed_d1", [&] { return closed.d1(); });
    cache.get_or_build("cover_closed_d2", [&] { return closed.d2(); });
    cache.get_or_build("cover_bounded_d1", [&] { return bounded.d1(); });
    cache.get_or_build("relator_translates", [&] { return bounded.relator_translates(); });
  }
  {
    long bad = 0;
    for (const auto& col : closed.d2().columns()) {
      if (!closed.d1().apply_to_columns(col).empty()) ++bad;
      if (!closed.projection().apply_to_columns(col).empty()) ++bad;
    }
    out.push_back(make_check("fox.chain-condition", bad == 0,
                             "d1 d2 = 0 and projection kills im d2",
                             fmt(long(closed.d2().cols())) + " columns, " + fmt(bad) +
                                 " failures",
                             "exact"));
    out.push_back(make_check("fox.rank-d1", closed.rank_d1() == p.count - 1,
                             fmt(long(p.count - 1)), fmt(long(closed.rank_d1())),
                             "exact"));
  }
  {
    auto dc = h1_dims(closed);
    auto db = h1_dims(bounded);
    long euler_h1_closed = 2 - long(p.count) * (2 - 2 * p.g);
    long euler_h1_bounded = 1 - long(p.count) * (1 - 2 * p.g);
    bool ok = long(dc.h1) == euler_h1_closed && long(db.h1) == euler_h1_bounded &&
              db.c_dim - dc.c_dim == db.i_dim && long(db.i_dim) == long(p.count) - 1;
    out.push_back(make_check(
        "fox.h1-dims", ok,
        "h1 matches Euler characteristic; c_bounded - c_closed = i_dim = |H| - 1",
        "closed h1 " + fmt(dc.h1) + " c " + fmt(dc.c_dim) + "; bounded h1 " + fmt(db.h1) +
            " c " + fmt(db.c_dim) + "; i " + fmt(db.i_dim),
        "exact"));
  }
  {
    auto rep = verify_I_structure(p);
    out.push_back(make_check("fox.identifyi", rep.passed() && rep.i_dim == p.count - 1,
                             "dim I = |H| - 1; kernel = theta line; free translation action",
                             "dim " + fmt(rep.i_dim) +
                                 (rep.kernel_is_theta_line ? ", theta kernel" : ", bad kernel") +
                                 (rep.action_free ? ", free" : ", not free"),
                             "exact"));
  }
  {
    bool exhaustive = cfg.g == 1 && cfg.L == 2;
    long samples = exhaustive ? 0 : std::max<long>(cfg.sample_count, 500);
    for (bool is_closed : {false, true}) {
      auto reports = verify_commutator_identities(p, is_closed, 4, samples, cfg.seed + 3);
      long bad = 0, checked = 0;
      std::string witness;
      for (const auto& r : reports) {
        bad += r.failures;
        checked += r.checked;
        if (!r.first_witness.empty() && witness.empty())
          witness = r.name + ": " + r.first_witness;
      }
      out.push_back(make_check(
          std::string("fox.commutator-identities-") + (is_closed ? "closed" : "bounded"),
          bad == 0,
          exhaustive ? "exhaustive words of length <= 4" : fmt(samples) + " samples per identity",
          fmt(checked) + " checks, " + fmt(bad) + " failures" +
              (witness.empty() ? "" : " (" + witness + ")"),
          "exact"));
    }
  }
  {
    long bad = 0, n = std::min<long>(cfg.sample_count, 100);
    for (long t = 0; t < n; ++t) {
      auto x = random_word(5), y = random_word(5), f = random_word(5);
      auto k = FreeWord::generator(p, int(rng() % p.dims())).power(p.L) *
               commutator(random_word(3), random_word(3));
      if (bounded.bracket_class(x, y, f) != bounded.bracket_class(x, y, f * k)) ++bad;
      if (bounded.bracket_class(x, y, f) != bounded.bracket_class_at(x, y, f.abelianize()))
        ++bad;
    }
    out.push_back(make_check("fox.bracket-conjugator", bad == 0,
                             "bracket classes depend on the conjugator mod L only",
                             fmt(n) + " samples, " + fmt(bad) + " failures", "exact"));
  }
  return out;
}

// ----------------------------------------------------------- presentation --

std::vector<Check> presentation_checks(const SuiteConfig& cfg, MatrixCache& cache) {
  std::vector<Check> out;
  auto p = LatticeParams::make(cfg.g, cfg.L);

  PresentationContext ctx = PresentationContext::build(p);
  if (cache.enabled() && ctx.table.n_pairs() > 0) {
    cache.get_or_build("psi_v1", [&] {
      return psi_matrix_pairs(ctx.table, ctx.catalog.v1_pairs);
    });
    // relation base rows, one matrix row per relation, column = generator id
    cache.get_or_build("relations_base", [&] {
      auto rows = ctx.relations.all();
      SparseRationalMatrix m(std::uint32_t(rows.size()),
                             std::uint32_t(ctx.table.generator_count()));
      for (std::uint32_t r = 0; r < rows.size(); ++r)
        for (const auto& term : rows[r])
          m.add(r, std::uint32_t(ctx.table.index_of(
                       ZlVector::from_index(p, term.offset), term.pair)),
                Rat(term.coeff));
      return m;
    });
  }

  auto append = [&out](std::vector<Check> checks) {
    for (auto& c : checks) out.push_back(std::move(c));
  };
  append(verify_counting_identities(6, 12));
  append(verify_family_counts(ctx));
  append(verify_psi_kills_relations(ctx, cfg.sample_count, cfg.seed + 4));
  append(verify_v1injective(ctx));
  append(verify_newrelation1(ctx, cfg.mode, cfg.exact_col_cap, cfg.sample_count,
                             cfg.seed + 5, cfg.worker_count));
  append(verify_eliminatev3(ctx, cfg.mode, cfg.exact_col_cap, cfg.worker_count));
  append(verify_newrelation2(ctx, cfg.mode, cfg.exact_col_cap, cfg.sample_count,
                             cfg.seed + 6, cfg.worker_count));
  append(verify_psiinjective(ctx, cfg.mode, cfg.exact_col_cap, cfg.worker_count));
  append(verify_claims(ctx, cfg.mode, cfg.exact_col_cap, cfg.worker_count));
  return out;
}

void run_section(std::vector<Check>& all, const std::string& section,
                 const std::function<std::vector<Check>()>& fn) {
  auto t0 = Clock::now();
  std::vector<Check> checks;
  try {
    checks = fn();
  } catch (const BudgetError& e) {
    checks.push_back(Check{section, "skipped-budget", "", e.what(), "", 0});
  } catch (const ModularInconsistency& e) {
    checks.push_back(Check{section, "fail", "prime agreement", e.what(), "modular", 0});
  }
  long ms = elapsed_ms(t0);
  for (auto& c : checks) {
    c.millis = ms;  // time of the enclosing computation
    all.push_back(std::move(c));
  }
}

}  // namespace

MatrixCache::MatrixCache(std::string cache_dir, int g, int L) {
  if (!cache_dir.empty())
    dir_ = cache_dir + "/g" + std::to_string(g) + "_L" + std::to_string(L);
}

std::string MatrixCache::path_of(const std::string& object) const {
  return dir_ + "/" + object + ".v1.triplets";
}

SparseRationalMatrix MatrixCache::get_or_build(
    const std::string& object, const std::function<SparseRationalMatrix()>& build) {
  if (!enabled()) return build();
  auto path = path_of(object);
  bool existed = std::filesystem::exists(path);
  if (auto cached = read_triplets(path)) return *cached;
  if (existed)
    warnings.push_back("cache entry " + path + " was corrupt; rebuilt");
  auto m = build();
  write_triplets(m, path);
  return m;
}

std::vector<Check> run_config_checks(const SuiteConfig& cfg) {
  std::vector<Check> out;
  MatrixCache cache(cfg.cache_dir, cfg.g, cfg.L);
  const std::string prefix = "g" + std::to_string(cfg.g) + ".L" + std::to_string(cfg.L) + ".";

  if (cfg.wants("lattice"))
    run_section(out, prefix + "lattice", [&] { return lattice_checks(cfg); });
  if (cfg.wants("ring")) run_section(out, prefix + "ring", [&] { return ring_checks(cfg); });
  if (cfg.wants("fox"))
    run_section(out, prefix + "fox", [&] { return fox_checks(cfg, cache); });
  if (cfg.wants("presentation"))
    run_section(out, prefix + "presentation", [&] { return presentation_checks(cfg, cache); });

  for (auto& c : out)
    if (c.name.rfind(prefix, 0) != 0) c.name = prefix + c.name;
  for (const auto& w : cache.warnings)
    out.push_back(Check{prefix + "cache.warning", "pass", "", w, "", 0});
  return out;
}

Report run_suite(const SuiteConfig& cfg) {
  Report rep;
  std::string suites;
  for (const auto& s : cfg.suites) suites += (suites.empty() ? "" : ",") + s;
  rep.config_echo = {{"g", std::to_string(cfg.g)},
                     {"L", std::to_string(cfg.L)},
                     {"suites", suites},
                     {"mode", cfg.mode},
                     {"sample_count", std::to_string(cfg.sample_count)},
                     {"seed", std::to_string(cfg.seed)},
                     {"cache_dir", cfg.cache_dir},
                     {"report_path", cfg.report_path},
                     {"worker_count", std::to_string(cfg.worker_count)},
                     {"exact_col_cap", std::to_string(cfg.exact_col_cap)}};
  rep.checks = run_config_checks(cfg);
  return rep;
}

std::string dims_table_csv(const std::vector<int>& gs, const std::vector<int>& Ls,
                           std::uint32_t exact_col_cap, int threads,
                           const std::string& cache_dir) {
  std::ostringstream os;
  os << "g,L,h1_closed,c_closed,h1_bounded,c_bounded,i_dim,tau,orbits,rank_psi_v1,"
        "dim_b1,quotient_dim_v\n";
  for (int g : gs)
    for (int L : Ls) {
      auto p = LatticeParams::make(g, L);
      MatrixCache cache(cache_dir, g, L);
      os << g << ',' << L << ',';
      // cover dimensions
      try {
        auto dc = h1_dims(CoverComplex::build(p, true, 1u << 13));
        auto db = h1_dims(CoverComplex::build(p, false, 1u << 13));
        os << dc.h1 << ',' << dc.c_dim << ',' << db.h1 << ',' << db.c_dim << ','
           << db.i_dim << ',';
      } catch (const BudgetError&) {
        os << "skipped,skipped,skipped,skipped,skipped,";
      }
      os << tau(L) << ',';
      try {
        os << sp_orbit_count_bfs(p, 1u << 12) << ',';
      } catch (const BudgetError&) {
        os << "skipped,";
      }
      // presented-space columns
      try {
        auto ctx = PresentationContext::build(p);
        auto m_v1 = cache.get_or_build("psi_v1", [&] {
          return psi_matrix_pairs(ctx.table, ctx.catalog.v1_pairs);
        });
        os << rank(m_v1, CertMode::exact).rank << ',' << ctx.catalog.dim_b1() << ',';
        if (ctx.table.n_pairs() == 0) {
          os << 0;  // V is empty
        } else if (p.L == 2 && ctx.table.generator_count() <= exact_col_cap) {
          TranslationSolveOptions opts;
          opts.mode = CertMode::exact;
          opts.threads = threads;
          auto res = translation_solve(ctx.module_R_V1_V2_V3(), {}, opts);
          os << (res.ranks[3] - res.ranks[0]);
        } else {
          os << "skipped";
        }
      } catch (const BudgetError&) {
        os << "skipped," << (long(g) * (long(L) * L - 1) + 1) << ",skipped";
      }
      os << '\n';
    }
  return os.str();
}

}  // namespace homlab
