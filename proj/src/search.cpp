#include "pellbaker/search.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "pellbaker/factor.hpp"
#include "pellbaker/pelleq.hpp"

namespace pellbaker {
namespace {

// Witness d is only a label; give up on numbers that resist factoring.
constexpr std::uint64_t kLabelEffort = 200'000;

std::optional<BigInt> label_d(const BigInt& x1, int eps) {
  try {
    return squarefree_kernel(x1 * x1 - eps, kLabelEffort).d;
  } catch (const FactorizationBudgetExceeded&) {
    return std::nullopt;
  }
}

struct Candidate {
  const BigInt* v;
  int n1;
  int eps;
};

bool witness_less(const WitnessPair& a, const WitnessPair& b) {
  return std::tie(a.x1, a.epsilon, a.n1, a.n2) < std::tie(b.x1, b.epsilon, b.n1, b.n2);
}

}  // namespace

void validate(const SearchBox& box) {
  family_by_name(box.family);
  if (box.l1max < 1 || box.m1max < 1 || box.l2max < 1 || box.m2max < 1 || box.n2max < 1) {
    throw std::invalid_argument("search box: all maxima must be at least 1");
  }
  if (box.epsilons.empty()) throw std::invalid_argument("search box: empty epsilon set");
  for (int e : box.epsilons) {
    if (e != 1 && e != -1) throw std::invalid_argument("search box: epsilon must be +-1");
  }
}

bool operator==(const WitnessPair& a, const WitnessPair& b) {
  return a.x1 == b.x1 && a.epsilon == b.epsilon && a.n1 == b.n1 && a.n2 == b.n2 &&
         a.first == b.first && a.second == b.second && a.x_n1 == b.x_n1 && a.x_n2 == b.x_n2 &&
         a.d == b.d;
}

std::vector<WitnessPair> find_witnesses(const SearchBox& box, unsigned jobs) {
  validate(box);
  const SequenceFamily& fam = family_by_name(box.family);
  const ProductTable t1 = build_product_table(fam, box.l1max, box.m1max);
  const ProductTable t2 = build_product_table(fam, box.l2max, box.m2max);
  const BigInt& limit = t2.max_value();

  std::vector<Candidate> cands;
  for (const auto& [v, pairs] : t1.entries()) {
    // x_{n2} > x_{n1} = v, so v must leave room below the second table's maximum.
    if (v >= limit) break;
    for (int n1 = 1; n1 < box.n2max; ++n1) {
      for (int e : box.epsilons) cands.push_back({&v, n1, e});
    }
  }

  if (jobs == 0) jobs = 1;
  std::vector<std::vector<WitnessPair>> found(jobs);
  auto work = [&](unsigned id) {
    for (std::size_t i = id; i < cands.size(); i += jobs) {
      const Candidate& c = cands[i];
      auto x1 = invert_x(*c.v, static_cast<unsigned>(c.n1), c.eps);
      if (!x1 || (*x1 == 1 && c.eps == 1)) continue;
      std::vector<BigInt> xs = x_terms(*x1, c.eps, limit);
      int top = std::min<int>(box.n2max, static_cast<int>(xs.size()));
      for (int n2 = c.n1 + 1; n2 <= top; ++n2) {
        const auto* hit = t2.find(xs[n2 - 1]);
        if (!hit) continue;
        WitnessPair w;
        w.x1 = *x1;
        w.epsilon = c.eps;
        w.n1 = c.n1;
        w.n2 = n2;
        w.first = t1.find(*c.v)->front();
        w.second = hit->front();
        w.x_n1 = *c.v;
        w.x_n2 = xs[n2 - 1];
        found[id].push_back(std::move(w));
      }
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < jobs; ++id) pool.emplace_back(work, id);
    for (auto& t : pool) t.join();
  }

  // One witness per value pair, from the smallest x1 that reaches it.
  std::map<std::pair<BigInt, BigInt>, WitnessPair> best;
  for (auto& part : found) {
    for (auto& w : part) {
      auto key = std::make_pair(w.x_n1, w.x_n2);
      auto it = best.find(key);
      if (it == best.end() || witness_less(w, it->second)) best[key] = std::move(w);
    }
  }
  std::vector<WitnessPair> out;
  for (auto& [k, w] : best) {
    w.d = label_d(w.x1, w.epsilon);
    out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end(), witness_less);
  return out;
}

bool verify_witness(const WitnessPair& w, const SequenceFamily& family) {
  if (w.n1 < 1 || w.n2 <= w.n1) return false;
  if (x_term(w.x1, w.epsilon, w.n1) != w.x_n1) return false;
  if (x_term(w.x1, w.epsilon, w.n2) != w.x_n2) return false;
  auto prod = [&](const IndexPair& p) -> BigInt {
    return term(family, p.first) * term(family, p.second);
  };
  return prod(w.first) == w.x_n1 && prod(w.second) == w.x_n2;
}

DirectScanResult direct_d_scan(const std::string& family, const BigInt& dmax, int nmax, int lmax) {
  if (dmax < 2) throw std::invalid_argument("direct_d_scan: dmax must be at least 2");
  if (nmax < 1 || lmax < 1) throw std::invalid_argument("direct_d_scan: nmax and lmax must be positive");
  const SequenceFamily& fam = family_by_name(family);
  const ProductTable table = build_product_table(fam, lmax, lmax);
  DirectScanResult out;
  for (BigInt d = 2; d <= dmax; ++d) {
    if (is_perfect_square(d) || !is_squarefree(d)) continue;
    FundamentalSolution fs = fundamental_solution(d);
    XSequence seq(fs);
    std::vector<SolutionRecord> hits;
    for (int n = 1; n <= nmax; ++n) {
      const BigInt& x = seq.x(n);
      if (x > table.max_value()) break;
      if (const auto* p = table.find(x)) {
        hits.push_back({d, fs.x1, fs.epsilon, n, x, p->front()});
      }
    }
    for (std::size_t i = 0; i < hits.size(); ++i) {
      for (std::size_t j = i + 1; j < hits.size(); ++j) {
        WitnessPair w;
        w.x1 = fs.x1;
        w.epsilon = fs.epsilon;
        w.n1 = hits[i].n;
        w.n2 = hits[j].n;
        w.first = hits[i].pair;
        w.second = hits[j].pair;
        w.x_n1 = hits[i].x_n;
        w.x_n2 = hits[j].x_n;
        w.d = d;
        out.witnesses.push_back(std::move(w));
      }
    }
    for (auto& h : hits) out.singles.push_back(std::move(h));
  }
  return out;
}

CrossValidation cross_validate(const std::string& family, const BigInt& dmax, int nmax, int lmax,
                               unsigned jobs) {
  using Key = std::tuple<BigInt, int, int>;
  std::set<Key> direct;
  for (const auto& w : direct_d_scan(family, dmax, nmax, lmax).witnesses) {
    direct.emplace(*w.d, w.n1, w.n2);
  }

  SearchBox box;
  box.family = family;
  box.l1max = box.m1max = box.l2max = box.m2max = lmax;
  box.n2max = nmax;
  std::set<Key> inverted;
  for (const auto& w : find_witnesses(box, jobs)) {
    if (!w.d) {
      throw MismatchFound("cross_validate: could not label witness x1 = " + to_decimal(w.x1));
    }
    if (*w.d > dmax) continue;
    // Re-express the indices relative to the fundamental solution of d.
    FundamentalSolution fs = fundamental_solution(*w.d);
    XSequence seq(fs);
    int k = 1;
    while (seq.x(k) < w.x1) ++k;
    if (seq.x(k) != w.x1) {
      throw MismatchFound("cross_validate: x1 = " + to_decimal(w.x1) +
                          " is not a solution for d = " + to_decimal(*w.d));
    }
    if (k * w.n2 > nmax) continue;
    inverted.emplace(*w.d, k * w.n1, k * w.n2);
  }

  auto describe = [](const Key& k) {
    return "d = " + to_decimal(std::get<0>(k)) + ", n1 = " + std::to_string(std::get<1>(k)) +
           ", n2 = " + std::to_string(std::get<2>(k));
  };
  for (const auto& k : direct) {
    if (!inverted.count(k)) throw MismatchFound("only the direct scan found " + describe(k));
  }
  for (const auto& k : inverted) {
    if (!direct.count(k)) throw MismatchFound("only the inversion search found " + describe(k));
  }
  CrossValidation cv;
  cv.witnesses = direct.size();
  std::set<BigInt> ds;
  for (const auto& k : direct) ds.insert(std::get<0>(k));
  cv.ds.assign(ds.begin(), ds.end());
  return cv;
}

}  // namespace pellbaker
