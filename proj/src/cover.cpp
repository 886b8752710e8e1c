#include "homlab/cover.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace homlab {

CoverComplex CoverComplex::build(const LatticeParams& p, bool closed,
                                 std::uint64_t budget) {
  if (p.count * std::uint64_t(p.dims()) > budget)
    throw BudgetError("cover complex exceeds size budget");
  CoverComplex c;
  c.params_ = p;
  c.closed_ = closed;
  const std::uint32_t n = std::uint32_t(p.count);

  c.d1_ = SparseRationalMatrix(n, n * p.dims());
  for (int j = 0; j < p.dims(); ++j) {
    std::uint32_t gen = ZlVector::basis(p, j).index();
    for (std::uint32_t h = 0; h < n; ++h) {
      c.d1_.add(p.add_index(h, gen), std::uint32_t(j) * n + h, Rat(1));
      c.d1_.add(h, std::uint32_t(j) * n + h, Rat(-1));
    }
  }

  c.relator_chain_ = fox_chain(FreeWord::relator(p));
  c.d2_ = SparseRationalMatrix(n * p.dims(), n);
  for (std::uint32_t h = 0; h < n; ++h)
    for (int j = 0; j < p.dims(); ++j)
      for (const auto& [idx, v] : c.relator_chain_.components[j].coeffs())
        c.d2_.add(std::uint32_t(j) * n + p.add_index(idx, h), h, v);

  c.projection_ = SparseRationalMatrix(p.dims(), n * p.dims());
  for (int j = 0; j < p.dims(); ++j)
    for (std::uint32_t h = 0; h < n; ++h)
      c.projection_.add(std::uint32_t(j), std::uint32_t(j) * n + h, Rat(1));

  c.rank_d1_ = rank(c.d1_, CertMode::exact).rank;
  c.rank_d2_ = rank(c.d2_, CertMode::exact).rank;

  if (closed) {
    c.im_d2_ = std::make_unique<Echelon<FieldQ>>(FieldQ{}, c.c1_dim());
    auto cols = c.d2_.columns();
    for (std::uint32_t h = 0; h < cols.size(); ++h) c.im_d2_->insert(cols[h], h);
  }
  return c;
}

SparseVec<Rat> CoverComplex::chain_of(const FreeWord& w) const {
  if (!(w.params() == params_)) throw ParamError("word over a different lattice");
  const std::uint32_t n = std::uint32_t(params_.count);
  SparseVec<Rat> out;
  for (int j = 0; j < params_.dims(); ++j) {
    GroupRingElement d = fox_derivative(w, j);
    for (const auto& [idx, v] : d.coeffs()) out.emplace_back(std::uint32_t(j) * n + idx, v);
  }
  return out;
}

SparseVec<Rat> CoverComplex::translate_chain(const SparseVec<Rat>& chain,
                                             const ZlVector& v) const {
  const std::uint32_t n = std::uint32_t(params_.count);
  const std::uint32_t t = v.index();
  SparseVec<Rat> out;
  out.reserve(chain.size());
  for (const auto& [c, val] : chain) {
    std::uint32_t j = c / n, h = c % n;
    out.emplace_back(j * n + params_.add_index(h, t), val);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

SparseVec<Rat> CoverComplex::cycle_class(const FreeWord& w) const {
  if (!w.abelianize().is_zero())
    throw InputError("cycle_class: word has nontrivial mod-L abelianization");
  return cycle_class(chain_of(w));
}

SparseVec<Rat> CoverComplex::cycle_class(const SparseVec<Rat>& cycle) const {
  if (!closed_) return cycle;
  std::lock_guard<std::mutex> lock(*mutex_);
  return im_d2_->residual(cycle);
}

SparseVec<Rat> CoverComplex::bracket_class(const FreeWord& x, const FreeWord& y,
                                           const FreeWord& f) const {
  return cycle_class(commutator(x, y).conjugated(f));
}

SparseVec<Rat> CoverComplex::bracket_class_at(const FreeWord& x, const FreeWord& y,
                                              const ZlVector& u) const {
  // the class of [x, y]^f depends on f through its abelianization u as the
  // deck translation by -u
  return cycle_class(translate_chain(chain_of(commutator(x, y)), -u));
}

SparseVec<Rat> CoverComplex::kappa(const ZlVector& v) const {
  SparseVec<Rat> chain;
  const std::uint32_t n = std::uint32_t(params_.count);
  for (int j = 0; j < params_.dims(); ++j)
    for (const auto& [idx, val] : relator_chain_.components[j].coeffs())
      chain.emplace_back(std::uint32_t(j) * n + idx, val);
  return cycle_class(translate_chain(chain, v));
}

H1Dims h1_dims(const CoverComplex& c) {
  const auto& p = c.params();
  const long hl = long(p.count);
  H1Dims dims;
  // h0 = 1 (the cover is connected): rank d1 = |H| - 1
  if (c.rank_d1() != std::uint32_t(hl - 1))
    throw std::logic_error("cover complex: rank d1 != |H| - 1");
  if (c.closed()) {
    dims.h1 = c.c1_dim() - c.rank_d1() - c.rank_d2();
    long euler = hl * (2 - 2 * p.g);
    long h2 = hl - long(c.rank_d2());
    if (1 - long(dims.h1) + h2 != euler)
      throw std::logic_error("cover complex: Euler characteristic mismatch");
  } else {
    dims.h1 = c.c1_dim() - c.rank_d1();
    long euler = hl * (1 - 2 * p.g);
    if (1 - long(dims.h1) != euler)
      throw std::logic_error("cover complex: Euler characteristic mismatch");
  }

  // the projection H_1(cover) -> H_1(surface) is onto: the cycles
  // alpha_j^L project to L e_j
  SparseRationalMatrix proj_of_cycles(p.dims(), p.dims());
  for (int j = 0; j < p.dims(); ++j) {
    auto cyc = c.chain_of(FreeWord::generator(p, j).power(p.L));
    std::vector<Rat> row(p.dims(), Rat(0));
    for (const auto& e : c.projection().entries())
      for (const auto& [col, v] : cyc)
        if (e.col == col) row[e.row] += e.value * v;
    for (int k = 0; k < p.dims(); ++k)
      if (sgn(row[k]) != 0) proj_of_cycles.add(std::uint32_t(k), std::uint32_t(j), row[k]);
  }
  if (rank(proj_of_cycles, CertMode::exact).rank != std::uint32_t(p.dims()))
    throw std::logic_error("cover complex: projection not onto");
  dims.c_dim = dims.h1 - std::uint32_t(p.dims());
  dims.i_dim = c.rank_d2();
  return dims;
}

namespace {

void enumerate_words_rec(const LatticeParams& p, int max_len, std::vector<int>& cur,
                         std::vector<FreeWord>& out) {
  out.emplace_back(p, cur);
  if (int(cur.size()) == max_len) return;
  for (int j = 0; j < p.dims(); ++j)
    for (int sign : {1, -1}) {
      int letter = sign * (j + 1);
      if (!cur.empty() && cur.back() == -letter) continue;
      cur.push_back(letter);
      enumerate_words_rec(p, max_len, cur, out);
      cur.pop_back();
    }
}

std::vector<FreeWord> all_words(const LatticeParams& p, int max_len) {
  std::vector<FreeWord> out;
  std::vector<int> cur;
  enumerate_words_rec(p, max_len, cur, out);
  return out;
}

FreeWord random_word(const LatticeParams& p, int max_len, std::mt19937_64& rng) {
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
}

// random word with trivial mod-L abelianization: pad a random word with
// correcting letters per coordinate
FreeWord random_kernel_word(const LatticeParams& p, int max_len, std::mt19937_64& rng) {
  FreeWord w = random_word(p, max_len, rng);
  auto ab = w.abelianize();
  for (int j = 0; j < p.dims(); ++j) {
    int c = ab.coord(j);
    if (c != 0) w = w * FreeWord::generator(p, j).power(p.L - c);
  }
  return w;
}

SparseVec<Rat> sub(const SparseVec<Rat>& a, const SparseVec<Rat>& b) {
  SparseVec<Rat> out;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->first < ia->first) {
      out.emplace_back(ib->first, -ib->second);
      ++ib;
    } else {
      Rat v = ia->second - ib->second;
      if (sgn(v) != 0) out.emplace_back(ia->first, v);
      ++ia, ++ib;
    }
  }
  return out;
}

SparseVec<Rat> add(const SparseVec<Rat>& a, const SparseVec<Rat>& b) {
  SparseVec<Rat> nb;
  nb.reserve(b.size());
  for (const auto& [i, v] : b) nb.emplace_back(i, -v);
  return sub(a, nb);
}

}  // namespace

std::vector<IdentityReport> verify_commutator_identities(const LatticeParams& p,
                                                         bool closed, int max_len,
                                                         long sample_count,
                                                         std::uint64_t seed) {
  CoverComplex cc = CoverComplex::build(p, closed);
  std::mt19937_64 rng(seed);

  const bool exhaustive = sample_count <= 0;
  std::vector<FreeWord> words, kernel_words;
  if (exhaustive) {
    words = all_words(p, max_len);
    for (const auto& w : words)
      if (w.abelianize().is_zero()) kernel_words.push_back(w);
  }

  auto report = [&](const std::string& name) {
    IdentityReport r;
    r.name = name;
    return r;
  };
  auto note = [&](IdentityReport& r, bool ok, const std::string& witness) {
    ++r.checked;
    if (!ok) {
      ++r.failures;
      if (r.first_witness.empty()) r.first_witness = witness;
    }
  };

  std::vector<IdentityReport> out;

  {  // item 1: <a, x> = <a>_{x} - <a> for a in the kernel subgroup
    auto r = report("commutatoridentities2.item1");
    auto check = [&](const FreeWord& a, const FreeWord& x) {
      auto lhs = cc.cycle_class(commutator(a, x));
      auto ca = cc.chain_of(a);
      auto rhs = cc.cycle_class(sub(cc.translate_chain(ca, -x.abelianize()), ca));
      note(r, lhs == rhs, "a=" + a.str() + " x=" + x.str());
    };
    if (exhaustive) {
      for (const auto& a : kernel_words)
        for (const auto& x : words) check(a, x);
    } else {
      for (long t = 0; t < sample_count; ++t)
        check(random_kernel_word(p, 8, rng), random_word(p, 8, rng));
    }
    out.push_back(r);
  }

  {  // item 2: <x, y> = -<y, x>
    auto r = report("commutatoridentities2.item2");
    auto check = [&](const FreeWord& x, const FreeWord& y) {
      auto lhs = cc.cycle_class(commutator(x, y));
      auto rhs = cc.cycle_class(commutator(y, x));
      note(r, add(lhs, rhs).empty(), "x=" + x.str() + " y=" + y.str());
    };
    if (exhaustive) {
      for (const auto& x : words)
        for (const auto& y : words) check(x, y);
    } else {
      for (long t = 0; t < sample_count; ++t)
        check(random_word(p, 8, rng), random_word(p, 8, rng));
    }
    out.push_back(r);
  }

  {  // item 3: <xy, z> = <x, z>_{y} + <y, z>, and <y^-1, z> = -<y, z>_{-y}
    auto r = report("commutatoridentities2.item3");
    auto r2 = report("commutatoridentities2.item3-inverse");
    auto check = [&](const FreeWord& x, const FreeWord& y, const FreeWord& z) {
      auto lhs = cc.cycle_class(commutator(x * y, z));
      auto t1 = cc.translate_chain(cc.chain_of(commutator(x, z)), -y.abelianize());
      auto rhs = cc.cycle_class(add(t1, cc.chain_of(commutator(y, z))));
      note(r, lhs == rhs, "x=" + x.str() + " y=" + y.str() + " z=" + z.str());

      auto il = cc.cycle_class(commutator(y.inverse(), z));
      auto ir = cc.cycle_class(cc.translate_chain(cc.chain_of(commutator(y, z)),
                                                  y.abelianize()));
      note(r2, add(il, ir).empty(), "y=" + y.str() + " z=" + z.str());
    };
    if (exhaustive) {
      int total_cap = 3 * max_len / 2;
      for (const auto& x : words)
        for (const auto& y : words) {
          if (x.length() + y.length() > total_cap) continue;
          for (const auto& z : words)
            if (x.length() + y.length() + z.length() <= total_cap) check(x, y, z);
        }
    } else {
      for (long t = 0; t < sample_count; ++t)
        check(random_word(p, 8, rng), random_word(p, 8, rng), random_word(p, 8, rng));
    }
    out.push_back(r);
    out.push_back(r2);
  }

  {  // subgroup lemma item 2: conjugators equal mod L give equal classes
    auto r = report("chdesc.item2");
    auto check = [&](const FreeWord& a, const FreeWord& f, const FreeWord& k) {
      auto c1 = cc.cycle_class(a.conjugated(f));
      auto c2 = cc.cycle_class(a.conjugated(f * k));
      note(r, c1 == c2, "a=" + a.str() + " f=" + f.str() + " k=" + k.str());
    };
    if (exhaustive) {
      for (const auto& a : kernel_words)
        for (const auto& f : words) {
          if (f.length() > max_len / 2 || a.length() + f.length() > 3 * max_len / 2)
            continue;
          for (const auto& k : kernel_words)
            if (k.length() <= max_len / 2) check(a, f, k);
        }
    } else {
      for (long t = 0; t < sample_count; ++t)
        check(random_kernel_word(p, 6, rng), random_word(p, 6, rng),
              random_kernel_word(p, 6, rng));
    }
    out.push_back(r);
  }

  {  // subgroup lemma item 3: <x, y> = 0 for x, y both in the kernel subgroup
    auto r = report("chdesc.item3");
    auto check = [&](const FreeWord& x, const FreeWord& y) {
      note(r, cc.cycle_class(commutator(x, y)).empty(), "x=" + x.str() + " y=" + y.str());
    };
    if (exhaustive) {
      for (const auto& x : kernel_words)
        for (const auto& y : kernel_words) check(x, y);
    } else {
      for (long t = 0; t < sample_count; ++t)
        check(random_kernel_word(p, 8, rng), random_kernel_word(p, 8, rng));
    }
    out.push_back(r);
  }

  return out;
}

IStructureReport verify_I_structure(const LatticeParams& p, std::uint64_t budget) {
  CoverComplex cc = CoverComplex::build(p, /*closed=*/false, budget);
  IStructureReport rep;
  const std::uint32_t n = std::uint32_t(p.count);

  rep.i_dim = cc.rank_d2();

  auto kernel = kernel_basis(cc.relator_translates());
  rep.kernel_is_theta_line = kernel.size() == 1 && kernel[0].size() == n;
  if (rep.kernel_is_theta_line) {
    const Rat& first = kernel[0].front().second;
    for (const auto& [i, v] : kernel[0])
      if (v != first) rep.kernel_is_theta_line = false;
  }

  rep.translation_permutes = true;
  rep.action_free = true;
  std::vector<SparseVec<Rat>> kappas;
  kappas.reserve(n);
  for (std::uint32_t v = 0; v < n; ++v) kappas.push_back(cc.kappa(ZlVector::from_index(p, v)));
  for (std::uint32_t v = 0; v < n; ++v) {
    ZlVector vv = ZlVector::from_index(p, v);
    for (std::uint32_t w = 0; w < n; ++w) {
      if (cc.translate_chain(kappas[w], vv) != kappas[p.add_index(v, w)])
        rep.translation_permutes = false;
      if (v != 0 && kappas[p.add_index(v, w)] == kappas[w]) rep.action_free = false;
    }
  }
  return rep;
}

}  // namespace homlab
