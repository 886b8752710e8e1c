#include "homlab/translation.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "homlab/pool.hpp"

namespace homlab {

SparseRationalMatrix TranslationModule::expand_stage(std::size_t k) const {
  const std::uint32_t n = std::uint32_t(params.count);
  const auto& rows = stages.at(k);
  SparseRationalMatrix out(std::uint32_t(total_cols()), n * std::uint32_t(rows.size()));
  for (std::uint32_t r = 0; r < rows.size(); ++r)
    for (std::uint32_t u = 0; u < n; ++u) {
      auto vec = expand_row(k, r, u);
      for (const auto& [c, val] : vec) out.add(c, r * n + u, val);
    }
  return out;
}

SparseVec<Rat> TranslationModule::expand_row(std::size_t stage, std::size_t row,
                                             std::uint32_t u) const {
  SparseVec<Rat> vec;
  for (const auto& t : stages.at(stage).at(row))
    vec.emplace_back(col(params.add_index(t.offset, u), t.pair), Rat(t.coeff));
  std::sort(vec.begin(), vec.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec<Rat> out;
  for (auto& [c, v] : vec) {
    if (!out.empty() && out.back().first == c)
      out.back().second += v;
    else
      out.emplace_back(c, v);
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const auto& t) { return sgn(t.second) == 0; }),
            out.end());
  return out;
}

SparseVec<Rat> apply_certificate(const TranslationModule& m,
                                 const std::vector<TranslationCertTerm>& cert) {
  std::vector<std::pair<std::uint32_t, Rat>> acc;
  for (const auto& t : cert)
    for (const auto& [c, v] : m.expand_row(t.stage, t.row, t.translate))
      acc.emplace_back(c, t.coeff * v);
  std::sort(acc.begin(), acc.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec<Rat> out;
  for (auto& [c, v] : acc) {
    if (!out.empty() && out.back().first == c)
      out.back().second += v;
    else
      out.emplace_back(c, v);
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const auto& t) { return sgn(t.second) == 0; }),
            out.end());
  return out;
}

namespace {

Rat elem_from_rat(const FieldQ&, const Rat& q) { return q; }

std::uint64_t elem_from_rat(const FieldFp& f, const Rat& q) {
  std::uint64_t den = mpz_fdiv_ui(q.get_den().get_mpz_t(), f.p);
  if (den == 0) throw ModularInconsistency("bad prime for query data");
  std::uint64_t num = mpz_fdiv_ui(q.get_num().get_mpz_t(), f.p);
  return f.mul(num, f.inv(den));
}

// f_p = weight[p] * f_root, or f_p = 0 when the component is pinned to zero.
template <class F>
struct ScaledUnionFind {
  const F& field;
  std::vector<std::uint32_t> parent;
  std::vector<typename F::Elem> weight;
  std::vector<char> zero;

  ScaledUnionFind(const F& f, std::uint32_t n)
      : field(f), parent(n), weight(n, f.one()), zero(n, 0) {
    for (std::uint32_t i = 0; i < n; ++i) parent[i] = i;
  }

  std::uint32_t find(std::uint32_t p) {
    if (parent[p] == p) return p;
    std::uint32_t root = find(parent[p]);
    weight[p] = field.mul(weight[p], weight[parent[p]]);
    parent[p] = root;
    return root;
  }

  // impose c1 * f_p1 + c2 * f_p2 = 0
  void relate(std::uint32_t p1, typename F::Elem c1, std::uint32_t p2,
              typename F::Elem c2) {
    std::uint32_t r1 = find(p1), r2 = find(p2);
    typename F::Elem w1 = field.mul(c1, weight_to_root(p1));
    typename F::Elem w2 = field.mul(c2, weight_to_root(p2));
    if (r1 == r2) {
      // c1 w1' f_r + c2 w2' f_r = 0: inconsistent scalars pin the class to 0
      if (!F::is_zero(field.add(w1, w2))) pin_zero(r1);
      return;
    }
    // f_r1 = -(w2 / w1) f_r2
    parent[r1] = r2;
    weight[r1] = field.neg(field.mul(w2, field.inv(w1)));
    if (zero[r1]) pin_zero(r2);
  }

  // impose c * f_p = 0 with c != 0
  void pin(std::uint32_t p) { pin_zero(find(p)); }

  bool is_zero_class(std::uint32_t p) { return zero[find(p)]; }
  typename F::Elem weight_to_root(std::uint32_t p) {
    find(p);
    return parent[p] == p ? field.one() : weight[p];
  }

 private:
  void pin_zero(std::uint32_t root) { zero[root] = 1; }
};

template <class F>
struct BlockOutcome {
  std::vector<std::uint64_t> stage_ranks;
  std::vector<char> member;
  // per query: solved base-row coefficients (certificate mode)
  std::vector<SparseVec<typename F::Elem>> solved;
  // per extra group vector: residual in synthetic coordinates (chi-local part)
  std::vector<SparseVec<typename F::Elem>> group_residuals;
};

struct ExtraGroupsView {
  const std::vector<std::vector<SparseVec<Rat>>>* groups = nullptr;
  const std::vector<std::size_t>* group_stage = nullptr;
};

// One character block: evaluate base rows under chi, collapse the 1-2 term
// rows by scaled union-find, eliminate the rest, answer queries.
template <class F>
BlockOutcome<F> run_block(const TranslationModule& m, const F& field,
                          const std::vector<typename F::Elem>& chi,
                          const std::vector<TranslationQuery>& queries,
                          const ExtraGroupsView& extra, bool collapse, bool history) {
  using E = typename F::Elem;
  const std::uint32_t np = m.n_pairs;
  BlockOutcome<F> out;
  out.member.assign(queries.size(), 1);
  out.solved.resize(queries.size());

  // chi-evaluation of a base row: E(row)[p] = sum coeff * chi(offset)
  std::vector<E> acc(np, field.zero());
  std::vector<std::uint32_t> hitlist;
  std::vector<char> hit(np, 0);
  auto evaluate = [&](const TranslationModule::BaseRow& row) {
    SparseVec<E> vec;
    for (const auto& t : row) {
      E v = field.mul(field.from_long(t.coeff), chi[t.offset]);
      if (!hit[t.pair]) {
        hit[t.pair] = 1;
        hitlist.push_back(t.pair);
        acc[t.pair] = v;
      } else {
        acc[t.pair] = field.add(acc[t.pair], v);
      }
    }
    std::sort(hitlist.begin(), hitlist.end());
    for (std::uint32_t p : hitlist) {
      if (!F::is_zero(acc[p])) vec.emplace_back(p, acc[p]);
      acc[p] = field.zero();
      hit[p] = 0;
    }
    hitlist.clear();
    return vec;
  };

  auto evaluate_full = [&](const SparseVec<Rat>& full) {
    SparseVec<E> vec;
    for (const auto& [c, q] : full) {
      std::uint32_t v = c / np, p = c % np;
      E val = field.mul(elem_from_rat(field, q), chi[v]);
      if (!hit[p]) {
        hit[p] = 1;
        hitlist.push_back(p);
        acc[p] = val;
      } else {
        acc[p] = field.add(acc[p], val);
      }
    }
    std::sort(hitlist.begin(), hitlist.end());
    for (std::uint32_t p : hitlist) {
      if (!F::is_zero(acc[p])) vec.emplace_back(p, acc[p]);
      acc[p] = field.zero();
      hit[p] = 0;
    }
    hitlist.clear();
    return vec;
  };

  ScaledUnionFind<F> uf(field, np);

  // Pass 1 (collapse mode): stage-0 rows with <= 2 surviving terms become
  // column identifications.
  std::vector<SparseVec<E>> deferred;  // stage-0 rows for the echelon
  if (collapse) {
    for (const auto& row : m.stages.front()) {
      auto vec = evaluate(row);
      if (vec.empty()) continue;
      if (vec.size() == 1)
        uf.pin(vec[0].first);
      else if (vec.size() == 2)
        uf.relate(vec[0].first, vec[0].second, vec[1].first, vec[1].second);
      else
        deferred.push_back(std::move(vec));
    }
  }

  // class layout
  std::vector<std::int32_t> class_of(np, -1);
  std::vector<std::uint32_t> rep_of_class;
  std::uint32_t n_classes = 0;
  if (collapse) {
    for (std::uint32_t p = 0; p < np; ++p) {
      std::uint32_t r = uf.find(p);
      if (uf.is_zero_class(p)) continue;
      if (r == p) {
        class_of[p] = std::int32_t(n_classes++);
        rep_of_class.push_back(p);
      }
    }
    for (std::uint32_t p = 0; p < np; ++p) {
      if (uf.is_zero_class(p)) continue;
      class_of[p] = class_of[uf.find(p)];
    }
  } else {
    n_classes = np;
    rep_of_class.resize(np);
    for (std::uint32_t p = 0; p < np; ++p) {
      class_of[p] = std::int32_t(p);
      rep_of_class[p] = p;
    }
  }
  const std::uint64_t collapsed_rank = collapse ? np - n_classes : 0;

  // rewrite a pair-space vector onto live classes
  std::vector<E> cacc(n_classes, field.zero());
  std::vector<std::uint32_t> chitlist;
  std::vector<char> chit(n_classes, 0);
  auto rewrite = [&](const SparseVec<E>& vec) {
    SparseVec<E> outv;
    for (const auto& [p, val] : vec) {
      if (collapse && uf.is_zero_class(p)) continue;
      std::uint32_t cl = std::uint32_t(class_of[p]);
      E v = collapse ? field.mul(val, uf.weight_to_root(p)) : val;
      if (!chit[cl]) {
        chit[cl] = 1;
        chitlist.push_back(cl);
        cacc[cl] = v;
      } else {
        cacc[cl] = field.add(cacc[cl], v);
      }
    }
    std::sort(chitlist.begin(), chitlist.end());
    for (std::uint32_t cl : chitlist) {
      if (!F::is_zero(cacc[cl])) outv.emplace_back(cl, cacc[cl]);
      cacc[cl] = field.zero();
      chit[cl] = 0;
    }
    chitlist.clear();
    return outv;
  };

  Echelon<F> ech(field, n_classes, history);

  // canonical-form dedupe of elimination rows (cheap, sound: duplicates are
  // already in the span)
  std::unordered_set<std::uint64_t> seen;
  auto row_signature = [&](const SparseVec<E>& vec) -> std::uint64_t {
    if constexpr (std::is_same_v<F, FieldFp>) {
      E inv_lead = field.inv(vec.front().second);
      std::uint64_t h = 1469598103934665603ull;
      auto mix = [&](std::uint64_t x) {
        h ^= x;
        h *= 1099511628211ull;
      };
      for (const auto& [cl, v] : vec) {
        mix(cl);
        mix(field.mul(inv_lead, v));
      }
      return h;
    } else {
      return 0;  // exact mode skips dedupe
    }
  };

  std::vector<std::size_t> query_order(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) query_order[i] = i;

  std::uint32_t origin = 0;
  out.stage_ranks.reserve(m.stages.size());
  std::size_t n_group_vecs = 0;
  if (extra.groups)
    for (const auto& g : *extra.groups) n_group_vecs += g.size();
  out.group_residuals.resize(n_group_vecs);

  for (std::size_t k = 0; k < m.stages.size(); ++k) {
    auto insert_vec = [&](SparseVec<E> vec, std::uint32_t id) {
      if (vec.empty()) return;
      if (!history && std::is_same_v<F, FieldFp> && vec.size() > 2) {
        auto sig = row_signature(vec);
        if (!seen.insert(sig).second) return;
      }
      ech.insert(vec, id);
    };
    if (k == 0 && collapse) {
      for (auto& vec : deferred) insert_vec(rewrite(vec), origin++);
      origin = std::uint32_t(m.stages[0].size());
    } else {
      for (const auto& row : m.stages[k]) insert_vec(rewrite(evaluate(row)), origin++);
    }
    out.stage_ranks.push_back(collapsed_rank + ech.rank());

    for (std::size_t qi : query_order) {
      if (queries[qi].stage != k) continue;
      auto vec = rewrite(evaluate_full(queries[qi].vector));
      if (history && queries[qi].want_certificate) {
        auto sol = ech.solve(vec);
        if (sol) {
          out.solved[qi] = std::move(*sol);
        } else {
          out.member[qi] = 0;
        }
      } else {
        out.member[qi] = ech.residual(vec).empty() ? 1 : 0;
      }
    }
    if (extra.groups) {
      std::size_t base = 0;
      for (std::size_t gi = 0; gi < extra.groups->size(); ++gi) {
        const auto& vecs = (*extra.groups)[gi];
        if ((*extra.group_stage)[gi] == k) {
          for (std::size_t vi = 0; vi < vecs.size(); ++vi) {
            auto res = ech.residual(rewrite(evaluate_full(vecs[vi])));
            // synthetic per-block coordinates: representative pair ids
            for (auto& [cl, v] : res) cl = rep_of_class[cl];
            out.group_residuals[base + vi] = std::move(res);
          }
        }
        base += vecs.size();
      }
    }
  }

  return out;
}

template <class F>
TranslationSolveResult solve_with_field(const TranslationModule& m, const F& field,
                                        const std::vector<typename F::Elem>& zeta_pow,
                                        const std::vector<TranslationQuery>& queries,
                                        const std::vector<std::vector<SparseVec<Rat>>>& groups,
                                        const std::vector<std::size_t>& group_stage,
                                        const TranslationSolveOptions& opts) {
  using E = typename F::Elem;
  const LatticeParams& P = m.params;
  const std::uint32_t n = std::uint32_t(P.count);
  const int L = P.L;

  // character tables: chi_c(v) = zeta^{<c, v>} with the coordinate dot product
  std::vector<std::vector<E>> chis(n);
  {
    std::vector<std::vector<int>> coords(n);
    for (std::uint32_t v = 0; v < n; ++v) {
      coords[v].resize(P.dims());
      std::uint32_t x = v;
      for (int d = 0; d < P.dims(); ++d) {
        coords[v][d] = int(x % L);
        x /= std::uint32_t(L);
      }
    }
    for (std::uint32_t c = 0; c < n; ++c) {
      chis[c].resize(n);
      for (std::uint32_t v = 0; v < n; ++v) {
        long dot = 0;
        for (int d = 0; d < P.dims(); ++d) dot += long(coords[c][d]) * coords[v][d];
        chis[c][v] = zeta_pow[std::size_t(dot % L)];
      }
    }
  }

  ExtraGroupsView extra;
  extra.groups = &groups;
  extra.group_stage = &group_stage;

  const bool collapse = !opts.with_certificates;
  std::vector<BlockOutcome<F>> blocks(n);
  parallel_for(n, opts.threads, [&](std::size_t c) {
    blocks[c] = run_block<F>(m, field, chis[c], queries, extra, collapse,
                             opts.with_certificates);
  });

  TranslationSolveResult res;
  res.ranks.assign(m.stages.size(), 0);
  res.queries.resize(queries.size());
  for (auto& q : res.queries) q.member = true;
  for (std::uint32_t c = 0; c < n; ++c) {
    for (std::size_t k = 0; k < m.stages.size(); ++k)
      res.ranks[k] += blocks[c].stage_ranks[k];
    for (std::size_t qi = 0; qi < queries.size(); ++qi)
      res.queries[qi].member = res.queries[qi].member && blocks[c].member[qi];
  }

  // assemble group residuals across blocks and rank them
  res.group_ranks.assign(groups.size(), 0);
  {
    std::size_t base = 0;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      const auto& vecs = groups[gi];
      Echelon<F> ech(field, n * m.n_pairs);
      for (std::size_t vi = 0; vi < vecs.size(); ++vi) {
        SparseVec<E> assembled;
        for (std::uint32_t c = 0; c < n; ++c)
          for (const auto& [p, v] : blocks[c].group_residuals[base + vi])
            assembled.emplace_back(c * m.n_pairs + p, v);
        std::sort(assembled.begin(), assembled.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        ech.insert(assembled, std::uint32_t(vi));
      }
      res.group_ranks[gi] = ech.rank();
      base += vecs.size();
    }
  }

  // exact certificates: c_{j, u} = (1/|H|) sum_chi lambda_{chi, j} chibar(u)
  if (opts.with_certificates) {
    if constexpr (std::is_same_v<F, FieldQ>) {
      std::vector<std::pair<std::uint32_t, std::uint32_t>> flat;  // (stage, row)
      for (std::uint32_t k = 0; k < m.stages.size(); ++k)
        for (std::uint32_t r = 0; r < m.stages[k].size(); ++r) flat.emplace_back(k, r);
      for (std::size_t qi = 0; qi < queries.size(); ++qi) {
        if (!queries[qi].want_certificate || !res.queries[qi].member) continue;
        std::vector<TranslationCertTerm> cert;
        // lambda per flattened row id, per block
        std::map<std::uint32_t, std::vector<Rat>> lambda;  // id -> per-chi value
        for (std::uint32_t c = 0; c < n; ++c)
          for (const auto& [id, v] : blocks[c].solved[qi]) {
            auto& slot = lambda[id];
            if (slot.empty()) slot.assign(n, Rat(0));
            slot[c] = v;
          }
        for (const auto& [id, per_chi] : lambda) {
          for (std::uint32_t u = 0; u < n; ++u) {
            Rat coeff(0);
            for (std::uint32_t c = 0; c < n; ++c)
              coeff += per_chi[c] * chis[c][P.neg_index(u)];
            coeff /= Rat(long(n));
            if (sgn(coeff) != 0)
              cert.push_back({flat[id].first, flat[id].second, u, coeff});
          }
        }
        res.queries[qi].certificate = std::move(cert);
      }
    }
  }
  return res;
}

}  // namespace

TranslationSolveResult translation_solve(const TranslationModule& m,
                                         const std::vector<TranslationQuery>& queries,
                                         const std::vector<std::vector<SparseVec<Rat>>>& groups,
                                         const std::vector<std::size_t>& group_stage,
                                         const TranslationSolveOptions& opts) {
  if (m.stages.empty()) throw InputError("translation module without stages");
  for (const auto& q : queries)
    if (q.stage >= m.stages.size()) throw InputError("query stage out of range");
  if (group_stage.size() != groups.size())
    throw InputError("one stage index per extra group required");
  for (std::size_t s : group_stage)
    if (s >= m.stages.size()) throw InputError("group stage out of range");
  if (opts.with_certificates && opts.mode != CertMode::exact)
    throw InputError("certificates require exact mode");

  if (opts.mode == CertMode::exact) {
    if (m.params.L != 2)
      throw BudgetError("exact translation solve requires L = 2 (rational characters)");
    std::vector<Rat> zeta_pow{Rat(1), Rat(-1)};
    auto res = solve_with_field<FieldQ>(m, FieldQ{}, zeta_pow, queries, groups,
                                        group_stage, opts);
    res.mode = CertMode::exact;
    // certificates re-verified here, once, against the expanded rows
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
      if (!queries[qi].want_certificate || !res.queries[qi].certificate) continue;
      if (apply_certificate(m, *res.queries[qi].certificate) != queries[qi].vector)
        throw std::logic_error("translation certificate failed exact re-verification");
    }
    return res;
  }

  // modular: >= 2 primes p = 1 mod L, cross-checked; on disagreement retry
  // once with fresh primes before giving up
  int num_primes = std::max(opts.modular.num_primes, 2);
  for (int attempt = opts.modular.attempt;; ++attempt) {
    try {
      TranslationSolveResult agreed;
      bool first = true;
      for (int i = 0; i < num_primes; ++i) {
        std::uint64_t p =
            verification_prime(attempt * num_primes + i, std::uint64_t(m.params.L));
        FieldFp f(p);
        std::uint64_t z = root_of_unity(f, std::uint64_t(m.params.L));
        std::vector<std::uint64_t> zeta_pow(m.params.L);
        zeta_pow[0] = 1;
        for (int k = 1; k < m.params.L; ++k) zeta_pow[k] = f.mul(zeta_pow[k - 1], z);
        auto res =
            solve_with_field<FieldFp>(m, f, zeta_pow, queries, groups, group_stage, opts);
        if (first) {
          agreed = std::move(res);
          agreed.mode = CertMode::modular;
          agreed.primes.push_back(p);
          first = false;
        } else {
          agreed.primes.push_back(p);
          if (res.ranks != agreed.ranks || res.group_ranks != agreed.group_ranks)
            throw ModularInconsistency("translation ranks disagree between primes");
          for (std::size_t qi = 0; qi < queries.size(); ++qi)
            // a single negative verdict is definitive non-membership over Q
            agreed.queries[qi].member =
                agreed.queries[qi].member && res.queries[qi].member;
        }
      }
      return agreed;
    } catch (const ModularInconsistency&) {
      if (attempt >= opts.modular.attempt + 1) throw;
    }
  }
}

}  // namespace homlab
