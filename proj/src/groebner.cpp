#include "hk/groebner.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace hk {

namespace {

using Raw = FiniteField::Raw;

std::uint64_t divmask(const Monomial& m) noexcept {
  static constexpr std::uint32_t kThr[8] = {0, 1, 2, 4, 8, 16, 32, 64};
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    for (std::size_t k = 0; k < 8; ++k)
      if (m.e[i] > kThr[k]) mask |= std::uint64_t{1} << (i * 8 + k);
  return mask;
}

// Sum of sparse polynomials kept as buckets of geometrically growing size.
// Each bucket is sorted ascending so the leading term sits at the back.
class Geobucket {
 public:
  Geobucket(const FiniteField& f, const MonomialOrder& o) : f_(f), o_(o) {}

  void add(std::vector<Term>&& p) {
    if (p.empty()) return;
    std::size_t k = 0;
    while (capacity(k) < p.size()) ++k;
    if (buckets_.size() <= k) buckets_.resize(k + 1);
    buckets_[k] = merge(std::move(buckets_[k]), std::move(p));
    while (buckets_[k].size() > capacity(k)) {
      if (buckets_.size() <= k + 1) buckets_.resize(k + 2);
      buckets_[k + 1] = merge(std::move(buckets_[k + 1]), std::move(buckets_[k]));
      buckets_[k].clear();
      ++k;
    }
  }

  bool pop_leading(Term& out) {
    for (;;) {
      int best = -1;
      for (std::size_t k = 0; k < buckets_.size(); ++k) {
        if (buckets_[k].empty()) continue;
        if (best < 0) {
          best = static_cast<int>(k);
          continue;
        }
        const int c = o_.compare(buckets_[k].back().m, buckets_[best].back().m);
        if (c > 0) best = static_cast<int>(k);
      }
      if (best < 0) return false;
      Term t = buckets_[best].back();
      buckets_[best].pop_back();
      for (std::size_t k = 0; k < buckets_.size(); ++k) {
        if (static_cast<int>(k) == best || buckets_[k].empty()) continue;
        if (buckets_[k].back().m == t.m) {
          t.c = f_.add(t.c, buckets_[k].back().c);
          buckets_[k].pop_back();
        }
      }
      if (t.c != 0) {
        out = t;
        return true;
      }
    }
  }

 private:
  static std::size_t capacity(std::size_t k) { return std::size_t{4} << (2 * k); }

  std::vector<Term> merge(std::vector<Term>&& a, std::vector<Term>&& b) {
    if (a.empty()) return std::move(b);
    if (b.empty()) return std::move(a);
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      const int c = o_.compare(a[i].m, b[j].m);
      if (c < 0) {
        out.push_back(a[i++]);
      } else if (c > 0) {
        out.push_back(b[j++]);
      } else {
        const Raw s = f_.add(a[i].c, b[j].c);
        if (s) out.push_back({a[i].m, s});
        ++i;
        ++j;
      }
    }
    out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
    out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
    return out;
  }

  const FiniteField& f_;
  const MonomialOrder& o_;
  std::vector<std::vector<Term>> buckets_;
};

struct Element {
  std::vector<Term> terms;  // descending, monic
  Monomial lm;
  std::uint64_t mask = 0;
  std::uint32_t maxdeg = 0;
  bool alive = true;
};

std::uint32_t max_degree(const std::vector<Term>& t) {
  std::uint32_t d = 0;
  for (const auto& x : t) d = std::max(d, x.m.deg);
  return d;
}

struct Pair {
  std::uint32_t i, j;
  Monomial lcm;
  std::uint64_t mask;
};

class Engine {
 public:
  Engine(const RingPtr& ring, const GroebnerOptions& opts)
      : ring_(ring), f_(*ring->field()), o_(ring->order()), opts_(opts),
        local_(ring->order().kind() == MonomialOrder::Kind::negdegrevlex) {
    kill_.fill(std::numeric_limits<std::uint32_t>::max());
  }

  // Full reduction of bucket contents against the alive elements.
  std::vector<Term> reduce(Geobucket& gb) {
    std::vector<Term> out;
    Term t;
    while (gb.pop_leading(t)) {
      if (killed(t.m)) continue;
      const Element* r = find_reducer(t.m);
      if (!r) {
        out.push_back(t);
        continue;
      }
      const Monomial shift = mono_div(t.m, r->lm);
      gb.add(multiply_tail(*r, shift, f_.neg(t.c)));
    }
    return out;
  }

  std::vector<Term> reduce_poly(const std::vector<Term>& p) {
    Geobucket gb(f_, o_);
    std::vector<Term> asc;
    asc.reserve(p.size());
    for (auto it = p.rbegin(); it != p.rend(); ++it)
      if (!killed(it->m)) asc.push_back(*it);
    gb.add(std::move(asc));
    return reduce(gb);
  }

  // Adds an already reduced, nonzero polynomial.
  void insert(std::vector<Term> p) {
    const Raw inv = f_.inv(p.front().c);
    for (auto& t : p) t.c = f_.mul(t.c, inv);
    Element e;
    e.lm = p.front().m;
    e.mask = divmask(e.lm);
    e.terms = std::move(p);
    e.maxdeg = max_degree(e.terms);
    if (e.terms.size() == 1) {
      const auto& m = e.lm;
      if (std::count_if(m.e.begin(), m.e.end(), [](std::uint32_t x) { return x > 0; }) == 1)
        for (std::size_t i = 0; i < kMaxVars; ++i)
          if (m.e[i]) kill_[i] = std::min(kill_[i], m.e[i]);
    }
    elems_.push_back(std::move(e));
    update(static_cast<std::uint32_t>(elems_.size() - 1));
    if (local_ && ++since_corner_ >= corner_interval()) update_corner();
  }

  bool has_unit() const {
    for (const auto& e : elems_)
      if (e.alive && e.lm.is_one()) return true;
    return false;
  }

  void run() {
    while (!pairs_.empty()) {
      if (has_unit()) return;
      std::pop_heap(pairs_.begin(), pairs_.end(), PairGreater{&o_});
      const Pair pr = pairs_.back();
      pairs_.pop_back();
      ++stats_.pairs_reduced;
      if (opts_.max_pairs && stats_.pairs_reduced > opts_.max_pairs)
        throw ResourceError("Groebner pair budget exhausted");
      Geobucket gb(f_, o_);
      const auto& a = elems_[pr.i];
      const auto& b = elems_[pr.j];
      gb.add(multiply_tail(a, mono_div(pr.lcm, a.lm), 1));
      gb.add(multiply_tail(b, mono_div(pr.lcm, b.lm), f_.neg(1)));
      auto h = reduce(gb);
      if (h.empty()) {
        ++stats_.zero_reductions;
        continue;
      }
      insert(std::move(h));
    }
  }

  // Interreduced, sorted ascending by leading monomial.
  std::vector<Polynomial> result() {
    std::vector<Polynomial> out;
    if (has_unit()) {
      out.push_back(Polynomial::constant(ring_, 1));
      return out;
    }
    std::vector<std::size_t> alive;
    for (std::size_t i = 0; i < elems_.size(); ++i)
      if (elems_[i].alive) alive.push_back(i);
    for (auto i : alive) {
      auto& e = elems_[i];
      std::vector<Term> tail(e.terms.begin() + 1, e.terms.end());
      auto red = reduce_poly(tail);
      std::vector<Term> full;
      full.reserve(red.size() + 1);
      full.push_back(e.terms.front());
      full.insert(full.end(), red.begin(), red.end());
      out.push_back(Polynomial::from_sorted(ring_, std::move(full)));
    }
    std::sort(out.begin(), out.end(), [&](const Polynomial& x, const Polynomial& y) {
      return o_.compare(x.lm(), y.lm()) < 0;
    });
    return out;
  }

  const GroebnerStats& stats() const { return stats_; }

  void seed_elements(const std::vector<Polynomial>& basis) {
    for (const auto& g : basis) {
      Element e;
      e.terms = g.terms();
      e.maxdeg = max_degree(e.terms);
      e.lm = g.lm();
      e.mask = divmask(e.lm);
      elems_.push_back(std::move(e));
      const auto& m = elems_.back().lm;
      if (g.size() == 1 &&
          std::count_if(m.e.begin(), m.e.end(), [](std::uint32_t x) { return x > 0; }) == 1)
        for (std::size_t i = 0; i < kMaxVars; ++i)
          if (m.e[i]) kill_[i] = std::min(kill_[i], m.e[i]);
    }
  }

 private:
  struct PairGreater {
    const MonomialOrder* o;
    bool operator()(const Pair& x, const Pair& y) const {
      const int c = o->compare(x.lcm, y.lcm);
      if (c != 0) return c > 0;
      if (x.j != y.j) return x.j > y.j;
      return x.i > y.i;
    }
  };

  bool killed(const Monomial& m) const noexcept {
    if (m.deg >= kill_deg_) return true;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (m.e[i] >= kill_[i]) return true;
    return false;
  }

  const Element* find_reducer(const Monomial& m) const noexcept {
    const std::uint64_t mm = divmask(m);
    for (const auto& e : elems_) {
      if (!e.alive || (e.mask & ~mm) != 0) continue;
      if (e.lm.divides(m)) return &e;
    }
    return nullptr;
  }

  // c * shift * (e minus its leading term), ascending, with killed terms
  // dropped.
  std::vector<Term> multiply_tail(const Element& e, const Monomial& shift, Raw c) {
    std::vector<Term> out;
    out.reserve(e.terms.size());
    // No exponent can exceed the total degree, so one check covers the loop.
    const bool safe = std::uint64_t{e.maxdeg} + shift.deg <= std::numeric_limits<std::uint32_t>::max();
    for (std::size_t k = e.terms.size(); k-- > 1;) {
      Monomial m;
      if (safe) {
        const auto& a = e.terms[k].m;
        for (std::size_t i = 0; i < kMaxVars; ++i) m.e[i] = a.e[i] + shift.e[i];
        m.deg = a.deg + shift.deg;
      } else {
        m = mono_mul(e.terms[k].m, shift);
      }
      if (killed(m)) continue;
      out.push_back({m, f_.mul(e.terms[k].c, c)});
    }
    return out;
  }

  void update(std::uint32_t k) {
    const Monomial& h = elems_[k].lm;
    const std::uint64_t hmask = elems_[k].mask;
    struct Cand {
      Pair p;
      bool coprime;
    };
    std::vector<Cand> cand;
    for (std::uint32_t i = 0; i < k; ++i) {
      if (!elems_[i].alive) continue;
      const Monomial l = mono_lcm(elems_[i].lm, h);
      cand.push_back({{i, k, l, divmask(l)}, mono_coprime(elems_[i].lm, h)});
    }
    // Chain criterion among the new pairs: a pair survives only if no
    // surviving pair's lcm divides its lcm. Coprime pairs sort first within
    // an lcm class so the whole class is then dropped by the product
    // criterion.
    std::sort(cand.begin(), cand.end(), [&](const Cand& a, const Cand& b) {
      const int c = o_.compare(a.p.lcm, b.p.lcm);
      if (c != 0) return c < 0;
      if (a.coprime != b.coprime) return a.coprime;
      return a.p.i < b.p.i;
    });
    std::vector<Cand> kept;
    for (const auto& c : cand) {
      bool drop = false;
      for (const auto& b : kept)
        if ((b.p.mask & ~c.p.mask) == 0 && b.p.lcm.divides(c.p.lcm)) {
          drop = true;
          break;
        }
      if (!drop) kept.push_back(c);
    }
    stats_.pairs_pruned += cand.size() - kept.size();
    // Old pairs made redundant by the new element.
    const std::size_t before = pairs_.size();
    std::erase_if(pairs_, [&](const Pair& p) {
      if ((hmask & ~p.mask) != 0 || !h.divides(p.lcm)) return false;
      const Monomial li = mono_lcm(elems_[p.i].lm, h);
      if (li == p.lcm) return false;
      const Monomial lj = mono_lcm(elems_[p.j].lm, h);
      return lj != p.lcm;
    });
    const bool erased = pairs_.size() != before;
    stats_.pairs_pruned += before - pairs_.size();
    if (erased) std::make_heap(pairs_.begin(), pairs_.end(), PairGreater{&o_});
    for (const auto& c : kept) {
      if (c.coprime) {
        ++stats_.pairs_pruned;
        continue;
      }
      pairs_.push_back(c.p);
      std::push_heap(pairs_.begin(), pairs_.end(), PairGreater{&o_});
    }
    for (std::uint32_t i = 0; i < k; ++i)
      if (elems_[i].alive && (hmask & ~elems_[i].mask) == 0 && h.divides(elems_[i].lm))
        elems_[i].alive = false;
  }

  // In a local degree order, once the leading monomials contain every
  // monomial of degree D, so does the ideal: a monomial of degree >= D
  // reduces through terms of degree >= D only, and those all die in the
  // pure-power box. Terms of degree >= D are dropped from then on.
  std::size_t corner_interval() const {
    std::size_t alive = 0;
    for (const auto& e : elems_) alive += e.alive;
    return std::max<std::size_t>(1, alive / 16);
  }
  void update_corner() {
    since_corner_ = 0;
    std::vector<Monomial> lms;
    for (const auto& e : elems_)
      if (e.alive) lms.push_back(e.lm);
    const auto d = Staircase(std::move(lms), ring_->nvars()).max_degree();
    if (d && *d + 1 < kill_deg_) kill_deg_ = static_cast<std::uint32_t>(*d + 1);
  }

  RingPtr ring_;
  const FiniteField& f_;
  const MonomialOrder& o_;
  GroebnerOptions opts_;
  bool local_ = false;
  std::uint32_t kill_deg_ = std::numeric_limits<std::uint32_t>::max();
  std::size_t since_corner_ = 0;
  GroebnerStats stats_;
  std::vector<Element> elems_;
  std::vector<Pair> pairs_;
  std::array<std::uint32_t, kMaxVars> kill_{};
};

}  // namespace

std::vector<Monomial> GroebnerBasis::leading_monomials() const {
  std::vector<Monomial> out;
  for (const auto& g : basis) out.push_back(g.lm());
  return out;
}

GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const GroebnerOptions& opts) {
  if (gens.empty()) throw PreconditionError("buchberger needs a ring; pass it explicitly");
  return buchberger(gens.front().ring(), gens, opts);
}

GroebnerBasis buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens,
                         const GroebnerOptions& opts) {
  for (const auto& g : gens)
    if (!g.ring()->same_as(*ring)) throw SpecMismatch("generators from different rings");
  Engine eng(ring, opts);
  std::vector<const Polynomial*> order;
  for (const auto& g : gens)
    if (!g.is_zero()) order.push_back(&g);
  // Small leading monomials first; ties keep input order.
  std::stable_sort(order.begin(), order.end(), [&](const Polynomial* a, const Polynomial* b) {
    return ring->order().compare(a->lm(), b->lm()) < 0;
  });
  for (const auto* g : order) {
    auto h = eng.reduce_poly(g->terms());
    if (h.empty()) continue;
    eng.insert(std::move(h));
    if (eng.has_unit()) break;
  }
  eng.run();
  GroebnerBasis gb;
  gb.ring = ring;
  gb.basis = eng.result();
  gb.stats = eng.stats();
  return gb;
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& g) {
  if (!f.ring()->same_as(*g.ring)) throw SpecMismatch("normal form across rings");
  Engine eng(g.ring, {});
  eng.seed_elements(g.basis);
  return Polynomial::from_sorted(g.ring, eng.reduce_poly(f.terms()));
}

bool ideal_contains(const GroebnerBasis& g, const Polynomial& f) {
  return normal_form(f, g).is_zero();
}

// --- staircase ------------------------------------------------------------

std::vector<Monomial> minimize_monomials(std::vector<Monomial> gens) {
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    return a.e < b.e;
  });
  std::vector<Monomial> out;
  std::vector<std::uint64_t> masks;
  for (const auto& m : gens) {
    const auto mm = divmask(m);
    bool redundant = false;
    for (std::size_t i = 0; i < out.size() && !redundant; ++i)
      if ((masks[i] & ~mm) == 0 && out[i].divides(m)) redundant = true;
    if (!redundant) {
      out.push_back(m);
      masks.push_back(mm);
    }
  }
  return out;
}

namespace {

using Exps = std::vector<std::uint32_t>;

struct VecHash {
  std::size_t operator()(const Exps& v) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto x : v) {
      h ^= x;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a == kInf || b == kInf) return (a == 0 || b == 0) ? 0 : kInf;
  unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
  if (r >= kInf) throw OverflowError("colength exceeds 64 bits");
  return static_cast<std::uint64_t>(r);
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a == kInf || b == kInf) return kInf;
  if (a > kInf - 1 - b) throw OverflowError("colength exceeds 64 bits");
  return a + b;
}

// Counts monomials in k variables outside a monomial ideal. Generators are
// stored flat, k exponents each, minimal and sorted.
class StairCounter {
 public:
  std::uint64_t count(const Exps& g, std::size_t k) {
    if (k == 0) return g.empty() ? 1 : 0;
    const std::size_t ng = g.size() / k;
    for (std::size_t i = 0; i < ng; ++i) {
      bool one = true;
      for (std::size_t v = 0; v < k; ++v) one = one && g[i * k + v] == 0;
      if (one) return 0;
    }
    if (ng == 0) return kInf;
    if (k == 1) {
      std::uint32_t mn = g[0];
      for (std::size_t i = 1; i < ng; ++i) mn = std::min(mn, g[i]);
      return mn;
    }
    if (k == 2) return count2(g);
    auto& memo = memo_[k];
    if (auto it = memo.find(g); it != memo.end()) return it->second;
    // Split on the last variable.
    std::vector<std::uint32_t> cuts;
    for (std::size_t i = 0; i < ng; ++i) cuts.push_back(g[i * k + k - 1]);
    cuts.push_back(0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < cuts.size(); ++c) {
      std::vector<Monomial> slice;
      for (std::size_t i = 0; i < ng; ++i) {
        if (g[i * k + k - 1] > cuts[c]) continue;
        Monomial m;
        std::uint32_t d = 0;
        for (std::size_t v = 0; v + 1 < k; ++v) {
          m.e[v] = g[i * k + v];
          d += m.e[v];
        }
        m.deg = d;
        slice.push_back(m);
      }
      const std::uint64_t sub = count(flatten(minimize_monomials(std::move(slice)), k - 1), k - 1);
      if (c + 1 == cuts.size()) {
        if (sub != 0) total = kInf;
      } else {
        total = checked_add(total, checked_mul(cuts[c + 1] - cuts[c], sub));
      }
      if (total == kInf) break;
    }
    memo.emplace(g, total);
    return total;
  }

  static Exps flatten(const std::vector<Monomial>& gens, std::size_t k) {
    Exps out;
    out.reserve(gens.size() * k);
    for (const auto& m : gens)
      for (std::size_t v = 0; v < k; ++v) out.push_back(m.e[v]);
    return out;
  }

 private:
  static std::uint64_t count2(const Exps& g) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pts;
    for (std::size_t i = 0; i + 1 < g.size(); i += 2) pts.emplace_back(g[i], g[i + 1]);
    std::sort(pts.begin(), pts.end());
    if (pts.front().first != 0) return kInf;  // no pure power of the 2nd var
    // Keep the staircase corners: y-exponent strictly decreasing.
    std::uint64_t total = 0;
    std::uint32_t cur_y = pts.front().second;
    std::uint32_t cur_x = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if (pts[i].second >= cur_y) continue;
      total = checked_add(total, checked_mul(pts[i].first - cur_x, cur_y));
      cur_x = pts[i].first;
      cur_y = pts[i].second;
    }
    if (cur_y != 0) return kInf;  // no pure power of the 1st var
    return total;
  }

  std::unordered_map<Exps, std::uint64_t, VecHash> memo_[kMaxVars + 1];
};

// Largest degree outside the ideal, by the same split as StairCounter.
// Returns -1 for none and kInfDeg for infinitely many.
constexpr std::int64_t kInfDeg = std::numeric_limits<std::int64_t>::max();

std::int64_t max_outside(const std::vector<Monomial>& g, std::size_t k) {
  for (const auto& m : g)
    if (m.is_one()) return -1;
  if (k == 0) return 0;
  std::vector<std::uint32_t> cuts{0};
  for (const auto& m : g) cuts.push_back(m.e[k - 1]);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::int64_t best = -1;
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    std::vector<Monomial> slice;
    for (const auto& m : g) {
      if (m.e[k - 1] > cuts[c]) continue;
      Monomial s = m;
      s.deg -= s.e[k - 1];
      s.e[k - 1] = 0;
      slice.push_back(s);
    }
    const std::int64_t sub = max_outside(minimize_monomials(std::move(slice)), k - 1);
    if (sub < 0) continue;
    if (c + 1 == cuts.size() || sub == kInfDeg) return kInfDeg;
    best = std::max(best, sub + static_cast<std::int64_t>(cuts[c + 1]) - 1);
  }
  return best;
}

}  // namespace

std::optional<std::int64_t> Staircase::max_degree() const {
  const auto d = max_outside(gens_, n_);
  if (d == kInfDeg) return std::nullopt;
  return d;
}

Staircase::Staircase(std::vector<Monomial> gens, std::size_t nvars)
    : gens_(minimize_monomials(std::move(gens))), n_(nvars) {}

bool Staircase::contains(const Monomial& m) const noexcept {
  for (const auto& g : gens_)
    if (g.divides(m)) return true;
  return false;
}

Colength Staircase::colength() const {
  StairCounter sc;
  const auto r = sc.count(StairCounter::flatten(gens_, n_), n_);
  if (r == kInf) return std::nullopt;
  return r;
}

int Staircase::dimension() const {
  if (!gens_.empty() && gens_.front().is_one()) return -1;
  std::vector<std::uint32_t> supports;
  for (const auto& g : gens_) supports.push_back(g.support());
  int best = 0;
  const std::uint32_t full = (n_ >= 32) ? 0xffffffffU : ((1U << n_) - 1);
  for (std::uint32_t s = 0; s <= full; ++s) {
    const int sz = __builtin_popcount(s);
    if (sz <= best) continue;
    bool independent = true;
    for (auto sup : supports)
      if ((sup & ~s) == 0) {
        independent = false;
        break;
      }
    if (independent) best = sz;
  }
  return best;
}

Colength colength(const GroebnerBasis& g) {
  return Staircase(g.leading_monomials(), g.ring->nvars()).colength();
}

int krull_dimension(const GroebnerBasis& g) {
  return Staircase(g.leading_monomials(), g.ring->nvars()).dimension();
}

bool is_regular_sequence(const RingPtr& ring, const std::vector<Polynomial>& base,
                         const std::vector<Polynomial>& seq) {
  const int d0 = krull_dimension(buchberger(ring, base));
  std::vector<Polynomial> all = base;
  all.insert(all.end(), seq.begin(), seq.end());
  const int d1 = krull_dimension(buchberger(ring, all));
  return d0 - d1 == static_cast<int>(seq.size());
}

}  // namespace hk
