#include "holobrace/abelian.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_set>

namespace holobrace {

AbelianType::AbelianType(uint32_t p, std::vector<uint32_t> exponents)
    : p_(p), exps_(std::move(exponents)) {
  if (!is_odd_prime(p_)) throw InvalidInput("p must be an odd prime");
  if (exps_.empty() || exps_.size() > kMaxRank)
    throw InvalidInput("rank must be between 1 and " + std::to_string(kMaxRank));
  for (uint32_t e : exps_)
    if (e == 0) throw InvalidInput("exponents must be positive");
  std::sort(exps_.begin(), exps_.end(), std::greater<uint32_t>());

  order_ = 1;
  mod_.resize(exps_.size());
  for (size_t i = 0; i < exps_.size(); ++i) {
    mod_[i] = static_cast<uint32_t>(ipow(p_, exps_[i]));
    order_ *= mod_[i];
    if (order_ > (1ull << 31)) throw InvalidInput("group order exceeds supported range");
  }
  weight_.resize(exps_.size());
  uint32_t w = 1;
  for (int i = rank() - 1; i >= 0; --i) {
    weight_[i] = w;
    w *= mod_[i];
  }
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) {
      uint32_t str = exps_[i] > exps_[j]
                         ? static_cast<uint32_t>(ipow(p_, exps_[i] - exps_[j]))
                         : 1u;
      stride_[i * kMaxRank + j] = str;
      radix_[i * kMaxRank + j] = mod_[i] / str;  // p^{min(e_i, e_j)}
    }
}

std::string AbelianType::describe() const {
  std::ostringstream os;
  os << "C";
  for (int i = 0; i < rank(); ++i) os << (i ? "xC" : "") << mod_[i];
  return os.str();
}

Element AbelianType::basis(int i) const {
  Element x;
  x.c[i] = 1;
  return x;
}

bool AbelianType::valid(const Element& x) const {
  for (int i = 0; i < rank(); ++i)
    if (x.c[i] >= mod_[i]) return false;
  for (int i = rank(); i < kMaxRank; ++i)
    if (x.c[i] != 0) return false;
  return true;
}

Element AbelianType::add(const Element& x, const Element& y) const {
  Element r;
  for (int i = 0; i < rank(); ++i) {
    uint32_t s = x.c[i] + y.c[i];
    r.c[i] = s >= mod_[i] ? s - mod_[i] : s;
  }
  return r;
}

Element AbelianType::neg(const Element& x) const {
  Element r;
  for (int i = 0; i < rank(); ++i) r.c[i] = x.c[i] ? mod_[i] - x.c[i] : 0;
  return r;
}

Element AbelianType::sub(const Element& x, const Element& y) const {
  return add(x, neg(y));
}

Element AbelianType::smul(uint64_t k, const Element& x) const {
  Element r;
  for (int i = 0; i < rank(); ++i)
    r.c[i] = static_cast<uint32_t>((k % mod_[i]) * x.c[i] % mod_[i]);
  return r;
}

bool AbelianType::is_zero(const Element& x) const {
  for (int i = 0; i < rank(); ++i)
    if (x.c[i]) return false;
  return true;
}

uint64_t AbelianType::element_order(const Element& x) const {
  uint64_t ord = 1;
  for (int i = 0; i < rank(); ++i) {
    // order of x.c[i] in C_{p^{e_i}} is p^{e_i} / p^{v_p(x.c[i])}
    uint32_t v = x.c[i];
    uint32_t o = mod_[i];
    while (v != 0 && v % p_ == 0) {
      v /= p_;
      o /= p_;
    }
    if (v == 0) o = 1;
    ord = std::max(ord, static_cast<uint64_t>(o));
  }
  return ord;
}

uint32_t AbelianType::pack(const Element& x) const {
  uint32_t idx = 0;
  for (int i = 0; i < rank(); ++i) idx += x.c[i] * weight_[i];
  return idx;
}

Element AbelianType::unpack(uint32_t idx) const {
  Element x;
  for (int i = 0; i < rank(); ++i) {
    x.c[i] = idx / weight_[i];
    idx %= weight_[i];
  }
  return x;
}

Mat AbelianType::mat_identity() const {
  Mat m;
  for (int i = 0; i < rank(); ++i) m.at(i, i) = 1;
  return m;
}

Mat AbelianType::mat_reduce(const Mat& raw) const {
  Mat m;
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) m.at(i, j) = raw.at(i, j) % mod_[i];
  return m;
}

std::optional<EndoReject> AbelianType::endo_validate(const Mat& m) const {
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j)
      if (m.at(i, j) % stride_[i * kMaxRank + j] != 0) return EndoReject{i, j};
  return std::nullopt;
}

Element AbelianType::apply(const Mat& m, const Element& x) const {
  Element r;
  for (int i = 0; i < rank(); ++i) {
    uint64_t acc = 0;
    for (int j = 0; j < rank(); ++j) acc += uint64_t(m.at(i, j)) * x.c[j];
    r.c[i] = static_cast<uint32_t>(acc % mod_[i]);
  }
  return r;
}

Mat AbelianType::compose(const Mat& a, const Mat& b) const {
  Mat r;
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) {
      uint64_t acc = 0;
      for (int k = 0; k < rank(); ++k) acc += uint64_t(a.at(i, k)) * b.at(k, j);
      r.at(i, j) = static_cast<uint32_t>(acc % mod_[i]);
    }
  return r;
}

Mat AbelianType::mat_add(const Mat& a, const Mat& b) const {
  Mat r;
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) {
      uint32_t s = a.at(i, j) + b.at(i, j);
      r.at(i, j) = s >= mod_[i] ? s - mod_[i] : s;
    }
  return r;
}

Mat AbelianType::mat_neg(const Mat& a) const {
  Mat r;
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) r.at(i, j) = a.at(i, j) ? mod_[i] - a.at(i, j) : 0;
  return r;
}

Mat AbelianType::mat_smul(uint64_t k, const Mat& a) const {
  Mat r;
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j)
      r.at(i, j) = static_cast<uint32_t>((k % mod_[i]) * a.at(i, j) % mod_[i]);
  return r;
}

Mat AbelianType::mat_pow(const Mat& a, uint64_t k) const {
  Mat r = mat_identity();
  Mat base = a;
  while (k) {
    if (k & 1) r = compose(r, base);
    base = compose(base, base);
    k >>= 1;
  }
  return r;
}

Mat AbelianType::power_sum(const Mat& m, uint64_t k) const {
  Mat acc = mat_zero();
  Mat pw = mat_identity();
  for (uint64_t i = 0; i < k; ++i) {
    acc = mat_add(acc, pw);
    pw = compose(pw, m);
  }
  return acc;
}

bool AbelianType::is_bijective(const Mat& m) const {
  std::vector<bool> hit(order(), false);
  uint64_t n = order();
  for (uint32_t idx = 0; idx < n; ++idx) {
    uint32_t img = pack(apply(m, unpack(idx)));
    if (hit[img]) return false;
    hit[img] = true;
  }
  return true;
}

namespace {

// Determinant mod p of the k x k block starting at (lo, lo).
uint32_t block_det_mod_p(const AbelianType& t, const Mat& m, int lo, int k) {
  uint32_t p = t.p();
  uint32_t a[kMaxRank][kMaxRank];
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) a[i][j] = m.at(lo + i, lo + j) % p;
  uint64_t det = 1;
  for (int col = 0; col < k; ++col) {
    int piv = -1;
    for (int r = col; r < k; ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      for (int j = 0; j < k; ++j) std::swap(a[piv][j], a[col][j]);
      det = det * (p - 1) % p;
    }
    det = det * a[col][col] % p;
    // inverse of the pivot mod p by Fermat
    uint64_t inv = 1, b = a[col][col], e = p - 2;
    while (e) {
      if (e & 1) inv = inv * b % p;
      b = b * b % p;
      e >>= 1;
    }
    for (int r = col + 1; r < k; ++r) {
      uint64_t f = a[r][col] * inv % p;
      if (!f) continue;
      for (int j = col; j < k; ++j)
        a[r][j] = static_cast<uint32_t>((a[r][j] + (p - f) * a[col][j]) % p);
    }
  }
  return static_cast<uint32_t>(det % p);
}

}  // namespace

bool AbelianType::is_invertible(const Mat& m) const {
  int lo = 0;
  while (lo < rank()) {
    int hi = lo;
    while (hi < rank() && exps_[hi] == exps_[lo]) ++hi;
    if (block_det_mod_p(*this, m, lo, hi - lo) == 0) return false;
    lo = hi;
  }
  return true;
}

Mat AbelianType::inverse(const Mat& m) const {
  // Invert mod p by Gauss, then Hensel-lift to mod p^{e_1}. All rows are
  // computed mod p^{e_1} and reduced at the end; row i only matters mod
  // p^{e_i}, which divides p^{e_1}.
  uint32_t p = p_;
  uint32_t big = mod_[0];
  int s = rank();

  uint32_t aug[kMaxRank][2 * kMaxRank];
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      aug[i][j] = m.at(i, j) % p;
      aug[i][s + j] = (i == j) ? 1 : 0;
    }
  for (int col = 0; col < s; ++col) {
    int piv = -1;
    for (int r = col; r < s; ++r)
      if (aug[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw PropertyViolation("inverse of a singular matrix requested");
    if (piv != col)
      for (int j = 0; j < 2 * s; ++j) std::swap(aug[piv][j], aug[col][j]);
    uint64_t inv = 1, b = aug[col][col], e = p - 2;
    while (e) {
      if (e & 1) inv = inv * b % p;
      b = b * b % p;
      e >>= 1;
    }
    for (int j = 0; j < 2 * s; ++j)
      aug[col][j] = static_cast<uint32_t>(aug[col][j] * inv % p);
    for (int r = 0; r < s; ++r) {
      if (r == col || aug[r][col] == 0) continue;
      uint64_t f = aug[r][col];
      for (int j = 0; j < 2 * s; ++j)
        aug[r][j] = static_cast<uint32_t>((aug[r][j] + (p - f) * aug[col][j]) % p);
    }
  }

  // Newton step X <- X (2I - M X) doubles the p-adic precision each round,
  // so e_1 <= 31 needs at most 5 rounds.
  auto mul_mod_big = [&](const uint64_t a[kMaxRank][kMaxRank],
                         const uint64_t b[kMaxRank][kMaxRank],
                         uint64_t out[kMaxRank][kMaxRank]) {
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) {
        uint64_t acc = 0;
        for (int k = 0; k < s; ++k) acc += a[i][k] * b[k][j] % big;
        out[i][j] = acc % big;
      }
  };
  uint64_t M[kMaxRank][kMaxRank], X[kMaxRank][kMaxRank];
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      M[i][j] = m.at(i, j) % big;
      X[i][j] = aug[i][s + j];
    }
  bool exact = false;
  for (int round = 0; round < 8 && !exact; ++round) {
    uint64_t MX[kMaxRank][kMaxRank], T[kMaxRank][kMaxRank], NX[kMaxRank][kMaxRank];
    mul_mod_big(M, X, MX);
    exact = true;
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j)
        if (MX[i][j] != (i == j ? 1ull : 0ull)) exact = false;
    if (exact) break;
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) {
        uint64_t two_i = (i == j) ? 2ull : 0ull;
        T[i][j] = (two_i + big - MX[i][j]) % big;
      }
    mul_mod_big(X, T, NX);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) X[i][j] = NX[i][j];
  }
  if (!exact) throw PropertyViolation("matrix inverse iteration did not converge");
  Mat r;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) r.at(i, j) = static_cast<uint32_t>(X[i][j] % mod_[i]);
  if (endo_validate(r)) throw PropertyViolation("inverse violates endo congruences");
  return r;
}

uint64_t AbelianType::aut_code_space() const {
  uint64_t space = 1;
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) space *= radix_[i * kMaxRank + j];
  return space;
}

uint64_t AbelianType::mat_code(const Mat& m) const {
  uint64_t code = 0;
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) {
      int k = i * kMaxRank + j;
      code = code * radix_[k] + m.at(i, j) / stride_[k];
    }
  return code;
}

Mat AbelianType::mat_from_code(uint64_t code) const {
  Mat m;
  for (int i = rank() - 1; i >= 0; --i)
    for (int j = rank() - 1; j >= 0; --j) {
      int k = i * kMaxRank + j;
      m.at(i, j) = static_cast<uint32_t>(code % radix_[k]) * stride_[k];
      code /= radix_[k];
    }
  return m;
}

void AbelianType::for_each_aut(const std::function<bool(const Mat&, uint64_t)>& fn) const {
  uint64_t space = aut_code_space();
  for (uint64_t code = 0; code < space; ++code) {
    Mat m = mat_from_code(code);
    if (!is_invertible(m)) continue;
    if (!fn(m, code)) return;
  }
}

namespace {
std::mutex g_aut_order_mutex;
std::map<std::pair<uint32_t, std::vector<uint32_t>>, uint64_t> g_aut_order_cache;
}  // namespace

uint64_t aut_order(const AbelianType& t, uint64_t candidate_budget) {
  {
    std::lock_guard<std::mutex> lock(g_aut_order_mutex);
    auto it = g_aut_order_cache.find({t.p(), t.exponents()});
    if (it != g_aut_order_cache.end()) return it->second;
  }
  if (t.aut_code_space() > candidate_budget)
    throw BudgetExceeded("automorphism candidate space exceeds budget for " + t.describe());
  uint64_t count = 0;
  t.for_each_aut([&](const Mat&, uint64_t) {
    ++count;
    return true;
  });
  std::lock_guard<std::mutex> lock(g_aut_order_mutex);
  g_aut_order_cache[{t.p(), t.exponents()}] = count;
  return count;
}

AutGroup aut_group(const AbelianType& t, uint64_t candidate_budget,
                   uint64_t closure_budget, uint64_t list_budget) {
  if (t.aut_code_space() > candidate_budget)
    throw BudgetExceeded("automorphism candidate space exceeds budget for " + t.describe());

  AutGroup out;
  std::unordered_set<uint64_t> closure;
  std::vector<Mat> closure_list;
  closure.insert(t.mat_code(t.mat_identity()));
  closure_list.push_back(t.mat_identity());
  bool closure_ok = true;

  // Rescan the whole list after each new generator; elements seen earlier
  // were only closed under the old generator set.
  auto close_with = [&](const Mat& g) {
    if (closure.insert(t.mat_code(g)).second) closure_list.push_back(g);
    size_t head = 0;
    while (head < closure_list.size()) {
      Mat cur = closure_list[head++];
      for (const Mat& gen : out.gens) {
        Mat nx = t.compose(cur, gen);
        if (closure.insert(t.mat_code(nx)).second) closure_list.push_back(nx);
      }
      if (closure.size() > closure_budget) return false;
    }
    return true;
  };

  t.for_each_aut([&](const Mat& m, uint64_t code) {
    ++out.order;
    if (out.elems.size() < list_budget) out.elems.push_back(m);
    if (closure_ok && !closure.count(code)) {
      out.gens.push_back(m);
      closure_ok = close_with(m);
    }
    return true;
  });
  if (!closure_ok)
    throw BudgetExceeded("generator closure exceeds budget for Aut(" + t.describe() + ")");
  if (closure.size() != out.order)
    throw PropertyViolation("collected generators do not close to |Aut|");
  out.elems_listed = out.order <= list_budget && out.elems.size() == out.order;
  if (!out.elems_listed) out.elems.clear();
  return out;
}

Omega1 omega1(const AbelianType& t) {
  Omega1 w;
  for (int i = 0; i < t.rank(); ++i) {
    Element g;
    g.c[i] = t.modulus(i) / t.p();
    w.gens.push_back(g);
  }
  w.order = ipow(t.p(), t.rank());
  return w;
}

bool omega1_contains(const AbelianType& t, const Element& x) {
  for (int i = 0; i < t.rank(); ++i)
    if (x.c[i] % (t.modulus(i) / t.p()) != 0) return false;
  return true;
}

std::vector<std::pair<uint64_t, uint64_t>> AbelianType::order_statistics() const {
  std::vector<std::pair<uint64_t, uint64_t>> stats;
  uint64_t prev = 0;
  for (uint32_t k = 0; k <= exps_[0]; ++k) {
    // #{x : p^k x = 0} = p^{sum min(k, e_i)}
    uint64_t cnt = 1;
    for (uint32_t e : exps_) cnt *= ipow(p_, std::min(k, e));
    stats.emplace_back(ipow(p_, k), cnt - prev);
    prev = cnt;
  }
  return stats;
}

}  // namespace holobrace
