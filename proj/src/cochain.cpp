#include "koszulq/cochain.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <tuple>

#include "json.hpp"
#include "koszulq/errors.hpp"

namespace koszulq {

namespace {

int sgn_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

SparseVec to_vec(const std::map<std::size_t, Rational>& m) {
  SparseVec v;
  for (const auto& [i, c] : m)
    if (!is_zero(c)) v.emplace_back(i, c);
  return v;
}

struct PreparedComp {
  const CochainKey* key;
  int degree;
  int src_degree;  // sum of shifted degrees of the sources
  std::size_t src_dim;
  std::map<std::size_t, std::vector<std::pair<std::size_t, Rational>>> by_row;
};

struct Prepared {
  long cutoff = 0;
  long shift_plus = 0;
  std::map<int, std::vector<PreparedComp>> by_tgt;
};

Prepared prepare(const Cochain& c) {
  const auto& cat = c.category();
  Prepared p;
  p.cutoff = c.cutoff();
  for (const auto& [key, comp] : c.components()) {
    PreparedComp pc;
    pc.key = &key;
    pc.degree = shifted_degree(cat, key);
    pc.src_degree = 0;
    for (int b : key.src) pc.src_degree += cat.blocks[b].coh - 1;
    pc.src_dim = source_dim(cat, key.src);
    for (const auto& [col, vec] : comp.cols)
      for (const auto& [row, v] : vec) pc.by_row[row].emplace_back(col, v);
    p.shift_plus = std::max(p.shift_plus, cat.blocks[key.tgt].weight - source_weight(cat, key.src));
    p.by_tgt[key.tgt].push_back(std::move(pc));
  }
  return p;
}

struct Structure {
  std::shared_ptr<const Cochain> m;
  std::shared_ptr<const Prepared> prep;
};

Structure structure_for(const std::shared_ptr<const GradedCategory>& cat) {
  static std::mutex mu;
  static std::map<const GradedCategory*, std::pair<std::weak_ptr<const GradedCategory>, Structure>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(cat.get());
  if (it != cache.end() && it->second.first.lock() == cat) return it->second.second;
  Structure s;
  s.m = std::make_shared<const Cochain>(structure_cochain(cat));
  s.prep = std::make_shared<const Prepared>(prepare(*s.m));
  cache[cat.get()] = {cat, s};
  return s;
}

using Acc = std::map<CochainKey, std::map<std::size_t, std::map<std::size_t, Rational>>>;

void brace_into(const Cochain& f, const std::vector<const Prepared*>& gs, long cutoff, Acc& acc) {
  const auto& cat = f.category();
  const std::size_t k = gs.size();
  std::vector<std::size_t> pos(k);
  std::vector<const PreparedComp*> chosen(k);

  for (const auto& [fkey, fcomp] : f.components()) {
    const std::size_t p = fkey.src.size();
    if (p < k) continue;
    std::vector<std::size_t> fdims(p);
    for (std::size_t s = 0; s < p; ++s) fdims[s] = cat.blocks[fkey.src[s]].dim();

    auto run = [&]() {
      CochainKey rkey;
      rkey.tgt = fkey.tgt;
      long exponent = 0;
      long running = 0;
      std::vector<std::size_t> slot_radix(p);
      std::size_t j = 0;
      for (std::size_t s = 0; s < p; ++s) {
        if (j < k && pos[j] == s) {
          const auto* g = chosen[j];
          rkey.src.insert(rkey.src.end(), g->key->src.begin(), g->key->src.end());
          exponent += static_cast<long>(g->degree) * running;
          running += g->src_degree;
          slot_radix[s] = g->src_dim;
          ++j;
        } else {
          rkey.src.push_back(fkey.src[s]);
          running += cat.blocks[fkey.src[s]].coh - 1;
          slot_radix[s] = fdims[s];
        }
      }
      for (int b : rkey.src)
        if (cat.blocks[b].unit) return;
      if (source_weight(cat, rkey.src) > cutoff) return;
      const Rational sign(sgn_pow(exponent));

      std::vector<std::size_t> digits(p);
      std::vector<const std::vector<std::pair<std::size_t, Rational>>*> lists(k);
      for (const auto& [fcol, fvec] : fcomp.cols) {
        std::size_t c = fcol;
        for (std::size_t s = p; s-- > 0;) {
          digits[s] = c % fdims[s];
          c /= fdims[s];
        }
        bool ok = true;
        for (std::size_t jj = 0; jj < k && ok; ++jj) {
          auto it = chosen[jj]->by_row.find(digits[pos[jj]]);
          if (it == chosen[jj]->by_row.end()) ok = false;
          else lists[jj] = &it->second;
        }
        if (!ok) continue;
        std::vector<std::size_t> idx(k, 0);
        while (true) {
          std::size_t rcol = 0;
          Rational coef = sign;
          std::size_t jj = 0;
          for (std::size_t s = 0; s < p; ++s) {
            if (jj < k && pos[jj] == s) {
              const auto& [gcol, gv] = (*lists[jj])[idx[jj]];
              rcol = rcol * slot_radix[s] + gcol;
              coef *= gv;
              ++jj;
            } else {
              rcol = rcol * slot_radix[s] + digits[s];
            }
          }
          auto& target = acc[rkey][rcol];
          for (const auto& [row, v] : fvec) target[row] += coef * v;
          std::size_t t = k;
          bool done = true;
          while (t-- > 0) {
            if (++idx[t] < lists[t]->size()) {
              done = false;
              break;
            }
            idx[t] = 0;
          }
          if (done) break;
        }
      }
    };

    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t j, std::size_t start) {
      if (j == k) {
        run();
        return;
      }
      for (std::size_t s = start; s + (k - j) <= p; ++s) {
        auto it = gs[j]->by_tgt.find(fkey.src[s]);
        if (it == gs[j]->by_tgt.end()) continue;
        pos[j] = s;
        for (const auto& pc : it->second) {
          chosen[j] = &pc;
          choose(j + 1, s + 1);
        }
      }
    };
    choose(0, 0);
  }
}

Cochain from_acc(const std::shared_ptr<const GradedCategory>& cat, long cutoff, const Acc& acc) {
  Cochain out(cat, cutoff);
  for (const auto& [key, cols] : acc)
    for (const auto& [col, rows] : cols) {
      auto v = to_vec(rows);
      if (!v.empty()) out.add_column(key, col, v);
    }
  return out;
}

long brace_cutoff(const Cochain& f, const std::vector<const Prepared*>& gs) {
  long c = f.cutoff();
  long shift = 0;
  for (const auto* g : gs) {
    c = std::min(c, g->cutoff);
    shift += g->shift_plus;
  }
  long res = std::min(c, f.cutoff() - shift);
  if (res < 0) throw CutoffError("brace: cutoff exhausted");
  return res;
}

Cochain brace_prepared(const Cochain& f, const std::vector<const Prepared*>& gs) {
  if (gs.empty()) return f;
  if (!f.is_zero() && f.max_arity() < gs.size()) throw UsageError("brace: arity of f is smaller than the number of insertions");
  long cutoff = brace_cutoff(f, gs);
  Acc acc;
  brace_into(f, gs, cutoff, acc);
  return from_acc(f.category_ptr(), cutoff, acc);
}

void check_carrier(const Cochain& a, const Cochain& b) {
  if (a.category_ptr() != b.category_ptr()) throw UsageError("cochains live on different carriers");
}

}  // namespace

Cochain::Cochain(std::shared_ptr<const GradedCategory> cat, long cutoff) : cat_(std::move(cat)), cutoff_(cutoff) {
  if (!cat_) throw UsageError("Cochain: null category");
}

void Cochain::add_entry(const CochainKey& key, std::size_t col, std::size_t row, const Rational& v) {
  if (koszulq::is_zero(v)) return;
  add_column(key, col, SparseVec{{row, v}});
}

void Cochain::add_column(const CochainKey& key, std::size_t col, const SparseVec& v, const Rational& scale) {
  if (v.empty() || koszulq::is_zero(scale)) return;
  auto& comp = comps_[key];
  auto& cur = comp.cols[col];
  std::map<std::size_t, Rational> m(cur.begin(), cur.end());
  for (const auto& [r, c] : v) {
    Rational t = c * scale;
    t.canonicalize();
    m[r] += t;
  }
  cur = to_vec(m);
  if (cur.empty()) comp.cols.erase(col);
  if (comp.cols.empty()) comps_.erase(key);
}

void Cochain::check_same(const Cochain& o) const { check_carrier(*this, o); }

void Cochain::trim() {
  for (auto it = comps_.begin(); it != comps_.end();) {
    if (source_weight(*cat_, it->first.src) > cutoff_) it = comps_.erase(it);
    else ++it;
  }
}

Cochain& Cochain::operator+=(const Cochain& o) {
  check_same(o);
  cutoff_ = std::min(cutoff_, o.cutoff_);
  for (const auto& [key, comp] : o.comps_)
    for (const auto& [col, v] : comp.cols) add_column(key, col, v);
  trim();
  return *this;
}

Cochain& Cochain::operator-=(const Cochain& o) {
  check_same(o);
  cutoff_ = std::min(cutoff_, o.cutoff_);
  for (const auto& [key, comp] : o.comps_)
    for (const auto& [col, v] : comp.cols) add_column(key, col, v, Rational(-1));
  trim();
  return *this;
}

Cochain& Cochain::operator*=(const Rational& c) {
  if (koszulq::is_zero(c)) {
    comps_.clear();
    return *this;
  }
  for (auto& [key, comp] : comps_)
    for (auto& [col, v] : comp.cols)
      for (auto& [r, x] : v) x *= c;
  return *this;
}

bool operator==(const Cochain& a, const Cochain& b) {
  check_carrier(a, b);
  long c = std::min(a.cutoff_, b.cutoff_);
  return (a.restricted(c) - b.restricted(c)).is_zero();
}

Cochain Cochain::restricted(long cutoff) const {
  Cochain out(cat_, std::min(cutoff, cutoff_));
  for (const auto& [key, comp] : comps_)
    if (source_weight(*cat_, key.src) <= out.cutoff_) out.comps_.emplace(key, comp);
  return out;
}

std::size_t Cochain::max_arity() const {
  std::size_t m = 0;
  for (const auto& [key, comp] : comps_) m = std::max(m, key.src.size());
  return m;
}

std::map<int, SparseVec> Cochain::evaluate(const std::vector<int>& src, const std::vector<std::size_t>& args) const {
  if (src.size() != args.size()) throw UsageError("evaluate: argument count mismatch");
  for (int b : src)
    if (b < 0 || static_cast<std::size_t>(b) >= cat_->blocks.size()) throw UsageError("evaluate: no such block");
  if (source_weight(*cat_, src) > cutoff_) throw CutoffError("evaluate: arguments beyond the cutoff");
  std::map<int, SparseVec> out;
  std::size_t col = 0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const auto& b = cat_->blocks.at(src[i]);
    if (args[i] >= b.dim()) throw UsageError("evaluate: basis index out of range");
    if (b.unit) return out;
    col = col * b.dim() + args[i];
  }
  for (auto it = comps_.lower_bound(CochainKey{src, INT_MIN}); it != comps_.end() && it->first.src == src; ++it) {
    auto c = it->second.cols.find(col);
    if (c != it->second.cols.end()) out[it->first.tgt] = c->second;
  }
  return out;
}

SuperPolynomial Cochain::evaluate_poly(const std::vector<SuperPolynomial>& args, const std::vector<char>& kinds) const {
  const auto& cat = *cat_;
  std::vector<std::map<int, SparseVec>> parts(args.size());
  for (std::size_t i = 0; i < args.size(); ++i) {
    char kind = i < kinds.size() ? kinds[i] : 0;
    std::map<int, std::map<std::size_t, Rational>> acc;
    for (const auto& [m, c] : args[i].poly().terms()) {
      bool found = false;
      for (std::size_t b = 0; b < cat.blocks.size() && !found; ++b) {
        if (kind && cat.blocks[b].kind != kind) continue;
        auto it = cat.blocks[b].index.find(m);
        if (it == cat.blocks[b].index.end()) continue;
        acc[static_cast<int>(b)][it->second] += c;
        found = true;
      }
      if (!found) throw CutoffError("evaluate_poly: argument term outside the materialized blocks");
    }
    for (auto& [b, m] : acc) parts[i][b] = to_vec(m);
  }
  SuperPolynomial out(cat.n);
  std::vector<int> src(args.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == args.size()) {
      for (std::size_t j = 1; j < src.size(); ++j)
        if (cat.blocks[src[j - 1]].tgt != cat.blocks[src[j]].src) return;
      for (int b : src)
        if (cat.blocks[b].unit) return;
      std::vector<std::size_t> idx(args.size(), 0);
      std::vector<std::size_t> basis(args.size());
      while (true) {
        Rational coef(1);
        for (std::size_t j = 0; j < args.size(); ++j) {
          const auto& [bi, c] = parts[j][src[j]][idx[j]];
          basis[j] = bi;
          coef *= c;
        }
        for (const auto& [tgt, v] : evaluate(src, basis)) out += cat.element(tgt, v) * coef;
        std::size_t t = args.size();
        bool done = true;
        while (t-- > 0) {
          if (++idx[t] < parts[t][src[t]].size()) {
            done = false;
            break;
          }
          idx[t] = 0;
        }
        if (done) break;
      }
      return;
    }
    for (const auto& [b, v] : parts[i]) {
      src[i] = b;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

std::string Cochain::to_json() const {
  nlohmann::json j;
  j["cutoff"] = cutoff_;
  j["components"] = nlohmann::json::array();
  for (const auto& [key, comp] : comps_) {
    nlohmann::json c;
    c["src"] = nlohmann::json::array();
    for (int b : key.src) c["src"].push_back(cat_->blocks[b].name);
    c["tgt"] = cat_->blocks[key.tgt].name;
    c["entries"] = nlohmann::json::array();
    for (const auto& [col, v] : comp.cols)
      for (const auto& [row, x] : v) c["entries"].push_back({col, row, koszulq::to_string(x)});
    j["components"].push_back(c);
  }
  return j.dump();
}

long source_weight(const GradedCategory& cat, const std::vector<int>& src) {
  long w = 0;
  for (int b : src) w += cat.blocks.at(b).weight;
  return w;
}

int shifted_degree(const GradedCategory& cat, const CochainKey& key) {
  int d = cat.blocks.at(key.tgt).coh - 1;
  for (int b : key.src) d -= cat.blocks.at(b).coh - 1;
  return d;
}

int inner_shift(const GradedCategory& cat, const CochainKey& key) {
  int d = cat.blocks.at(key.tgt).inner;
  for (int b : key.src) d -= cat.blocks.at(b).inner;
  return d;
}

std::size_t source_dim(const GradedCategory& cat, const std::vector<int>& src) {
  std::size_t d = 1;
  for (int b : src) d *= cat.blocks.at(b).dim();
  return d;
}

std::vector<std::vector<int>> source_sequences(const GradedCategory& cat, std::size_t arity, long max_weight) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(long)> rec = [&](long w) {
    if (cur.size() == arity) {
      out.push_back(cur);
      return;
    }
    for (std::size_t b = 0; b < cat.blocks.size(); ++b) {
      const auto& blk = cat.blocks[b];
      if (blk.unit || blk.dim() == 0) continue;
      if (!cur.empty() && cat.blocks[cur.back()].tgt != blk.src) continue;
      if (w + blk.weight > max_weight) continue;
      cur.push_back(static_cast<int>(b));
      rec(w + blk.weight);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::map<int, Cochain> split_by_degree(const Cochain& c) {
  std::map<int, Cochain> out;
  for (const auto& [key, comp] : c.components()) {
    int d = shifted_degree(c.category(), key);
    auto it = out.try_emplace(d, c.category_ptr(), c.cutoff()).first;
    for (const auto& [col, v] : comp.cols) it->second.add_column(key, col, v);
  }
  return out;
}

Cochain structure_m2(const std::shared_ptr<const GradedCategory>& cat) {
  Cochain m(cat, cat->max_weight);
  for (const auto& [uv, prod] : cat->mult) {
    Rational s(sgn_pow(cat->blocks[uv.first].coh));
    CochainKey key{{uv.first, uv.second}, prod.out};
    auto t = prod.table.transpose();
    for (std::size_t col = 0; col < t.rows(); ++col) m.add_column(key, col, t.row_vec(col), s);
  }
  return m;
}

Cochain structure_m1(const std::shared_ptr<const GradedCategory>& cat) {
  Cochain m(cat, cat->max_weight);
  for (const auto& [b, d] : cat->diff) {
    CochainKey key{{b}, d.out};
    auto t = d.table.transpose();
    for (std::size_t col = 0; col < t.rows(); ++col) m.add_column(key, col, t.row_vec(col), Rational(-1));
  }
  return m;
}

Cochain structure_cochain(const std::shared_ptr<const GradedCategory>& cat) {
  return structure_m1(cat) + structure_m2(cat);
}

Cochain identity_cochain(const std::shared_ptr<const GradedCategory>& cat, long cutoff) {
  Cochain id(cat, cutoff);
  for (std::size_t b = 0; b < cat->blocks.size(); ++b) {
    const auto& blk = cat->blocks[b];
    if (blk.unit || blk.weight > cutoff) continue;
    for (std::size_t i = 0; i < blk.dim(); ++i)
      id.add_entry({{static_cast<int>(b)}, static_cast<int>(b)}, i, i, Rational(1));
  }
  return id;
}

Cochain unit_cochain(const std::shared_ptr<const GradedCategory>& cat) {
  Cochain u(cat, Cochain::unbounded);
  for (std::size_t b = 0; b < cat->blocks.size(); ++b)
    if (cat->blocks[b].unit) u.add_entry({{}, static_cast<int>(b)}, 0, 0, Rational(1));
  return u;
}

Cochain brace(const Cochain& f, const std::vector<Cochain>& gs) {
  for (const auto& g : gs) check_carrier(f, g);
  std::vector<Prepared> preps;
  preps.reserve(gs.size());
  for (const auto& g : gs) preps.push_back(prepare(g));
  std::vector<const Prepared*> ptrs;
  for (const auto& p : preps) ptrs.push_back(&p);
  return brace_prepared(f, ptrs);
}

Cochain hoch_differential(const Cochain& c) {
  const auto& cat = c.category_ptr();
  auto st = structure_for(cat);
  const Cochain& m = *st.m;
  const Prepared* m_prep = st.prep.get();
  Prepared c_prep = prepare(c);
  long cutoff = std::min(brace_cutoff(m, {&c_prep}), brace_cutoff(c, {m_prep}));
  Acc acc;
  brace_into(m, {&c_prep}, cutoff, acc);
  for (auto& [deg, piece] : split_by_degree(c)) {
    Acc inner;
    brace_into(piece, {m_prep}, cutoff, inner);
    Rational s(-sgn_pow(deg));
    for (auto& [key, cols] : inner)
      for (auto& [col, rows] : cols)
        for (auto& [row, v] : rows) acc[key][col][row] += s * v;
  }
  return from_acc(cat, cutoff, acc);
}

Cochain gerstenhaber_bracket(const Cochain& a, const Cochain& b) {
  check_carrier(a, b);
  Cochain out(a.category_ptr(), std::min(a.cutoff(), b.cutoff()));
  auto insert = [](const Cochain& f, const Cochain& g) {
    return f.max_arity() == 0 ? Cochain(f.category_ptr(), std::min(f.cutoff(), g.cutoff())) : brace(f, {g});
  };
  bool first = true;
  for (auto& [da, pa] : split_by_degree(a))
    for (auto& [db, pb] : split_by_degree(b)) {
      Cochain t = insert(pa, pb) - insert(pb, pa) * Rational(sgn_pow(static_cast<long>(da) * db));
      if (first) {
        out = t;
        first = false;
      } else {
        out += t;
      }
    }
  if (first) {
    // One side is zero; the cutoff still reflects what the bracket would know.
    Prepared pa = prepare(a), pb = prepare(b);
    out.set_cutoff(std::min(brace_cutoff(a, {&pb}), brace_cutoff(b, {&pa})));
  }
  return out;
}

Cochain cup(const Cochain& a, const Cochain& b) {
  check_carrier(a, b);
  Cochain m2 = structure_m2(a.category_ptr());
  Cochain out(a.category_ptr(), std::min(a.cutoff(), b.cutoff()));
  bool first = true;
  for (auto& [da, pa] : split_by_degree(a))
    for (auto& [db, pb] : split_by_degree(b)) {
      Cochain t = brace(m2, {pa, pb}) * Rational(sgn_pow(static_cast<long>(da + 1) * db));
      if (first) {
        out = t;
        first = false;
      } else {
        out += t;
      }
    }
  return out;
}

Cochain CochainBasis::element(const std::shared_ptr<const GradedCategory>& cat, std::size_t i, long cutoff) const {
  Cochain c(cat, cutoff);
  const auto& e = entries.at(i);
  c.add_entry(keys[e.key], e.col, e.row, Rational(1));
  return c;
}

SparseVec CochainBasis::coordinates(const Cochain& c) const {
  std::map<std::size_t, Rational> m;
  for (const auto& [key, comp] : c.components()) {
    auto k = key_index.find(key);
    if (k == key_index.end()) throw StructuralError("cochain has a component outside the basis");
    for (const auto& [col, v] : comp.cols)
      for (const auto& [row, x] : v) {
        auto it = lookup.find({k->second, col, row});
        if (it == lookup.end()) throw StructuralError("cochain entry outside the basis");
        m[it->second] += x;
      }
  }
  return to_vec(m);
}

CochainBasis cochain_basis(const GradedCategory& cat, const std::vector<std::size_t>& arities, long max_weight,
                           const std::function<bool(const CochainKey&)>& keep) {
  CochainBasis basis;
  for (std::size_t arity : arities) {
    for (const auto& src : source_sequences(cat, arity, max_weight)) {
      for (std::size_t t = 0; t < cat.blocks.size(); ++t) {
        const auto& tb = cat.blocks[t];
        if (tb.dim() == 0) continue;
        if (src.empty()) {
          if (tb.src != tb.tgt) continue;
        } else if (tb.src != cat.blocks[src.front()].src || tb.tgt != cat.blocks[src.back()].tgt) {
          continue;
        }
        CochainKey key{src, static_cast<int>(t)};
        if (!keep(key)) continue;
        std::size_t ki = basis.keys.size();
        basis.keys.push_back(key);
        basis.key_index[key] = ki;
        std::size_t cols = source_dim(cat, src);
        for (std::size_t col = 0; col < cols; ++col)
          for (std::size_t row = 0; row < tb.dim(); ++row) {
            basis.lookup[{ki, col, row}] = basis.entries.size();
            basis.entries.push_back({ki, col, row});
          }
      }
    }
  }
  return basis;
}

SparseMatrix assemble(const std::shared_ptr<const GradedCategory>& cat, const CochainBasis& from, const CochainBasis& to,
                      long cutoff, const std::function<Cochain(const Cochain&)>& map) {
  SparseMatrix m(to.size(), from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    Cochain image = map(from.element(cat, i, cutoff));
    for (const auto& [r, v] : to.coordinates(image.restricted(cutoff))) m.add(r, i, v);
  }
  return m;
}

std::optional<Cochain> is_coboundary(const Cochain& c) {
  const auto& cat = c.category_ptr();
  if (!hoch_differential(c).is_zero()) throw UsageError("is_coboundary: input is not closed");
  Cochain zero(cat, c.cutoff());
  if (c.is_zero()) return zero;

  std::set<std::pair<int, int>> degrees;  // (shifted degree, inner shift)
  std::set<std::size_t> arities;
  bool has_diff = !cat->diff.empty();
  for (const auto& [key, comp] : c.components()) {
    degrees.insert({shifted_degree(*cat, key) - 1, inner_shift(*cat, key)});
    std::size_t a = key.src.size();
    if (has_diff) {
      for (std::size_t i = 0; i <= a; ++i) arities.insert(i);
    } else if (a > 0) {
      arities.insert(a - 1);
    }
  }
  auto basis = cochain_basis(*cat, {arities.begin(), arities.end()}, c.cutoff(), [&](const CochainKey& key) {
    return degrees.count({shifted_degree(*cat, key), inner_shift(*cat, key)}) > 0;
  });

  std::map<std::tuple<CochainKey, std::size_t, std::size_t>, std::size_t> rows;
  auto row_of = [&](const CochainKey& key, std::size_t col, std::size_t row) {
    auto [it, inserted] = rows.try_emplace({key, col, row}, rows.size());
    return it->second;
  };
  std::vector<std::vector<std::pair<std::size_t, Rational>>> columns(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Cochain image = hoch_differential(basis.element(cat, i, c.cutoff()));
    if (image.cutoff() < c.cutoff()) throw CutoffError("is_coboundary: category truncation too small for the cutoff");
    for (const auto& [key, comp] : image.components())
      for (const auto& [col, v] : comp.cols)
        for (const auto& [row, x] : v) columns[i].emplace_back(row_of(key, col, row), x);
  }
  std::vector<std::pair<std::size_t, Rational>> rhs;
  for (const auto& [key, comp] : c.components())
    for (const auto& [col, v] : comp.cols)
      for (const auto& [row, x] : v) rhs.emplace_back(row_of(key, col, row), x);

  SparseMatrix m(rows.size(), basis.size());
  for (std::size_t i = 0; i < columns.size(); ++i)
    for (const auto& [r, x] : columns[i]) m.add(r, i, x);
  DenseVec b(rows.size(), Rational(0));
  for (const auto& [r, x] : rhs) b[r] += x;
  auto sol = solve_linear(m, b);
  if (!sol) return std::nullopt;
  Cochain w(cat, c.cutoff());
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!is_zero((*sol)[i])) {
      const auto& e = basis.entries[i];
      w.add_entry(basis.keys[e.key], e.col, e.row, (*sol)[i]);
    }
  return w;
}

bool maurer_cartan_check(const std::vector<Cochain>& pi) {
  if (pi.empty()) return true;
  if (!pi[0].is_zero()) throw UsageError("maurer_cartan_check: pi must vanish at h = 0");
  for (std::size_t k = 1; k < pi.size(); ++k) {
    Cochain lhs = hoch_differential(pi[k]);
    for (std::size_t i = 1; i < k; ++i) lhs += gerstenhaber_bracket(pi[i], pi[k - i]) * Rational(1, 2);
    if (!lhs.is_zero()) return false;
  }
  return true;
}

}  // namespace koszulq
