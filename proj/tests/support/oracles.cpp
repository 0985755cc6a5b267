#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace fsel::oracle {

namespace {

using Counts = std::map<std::string, std::map<std::string, int>>;

Counts jointCounts(const Dataset& d, const FeatureMask& m) {
  const auto p = patterns(d, m);
  const auto c = classLabels(d);
  Counts out;
  for (std::size_t i = 0; i < p.size(); ++i) ++out[p[i]][c[i]];
  return out;
}

double entropyOf(const std::map<std::string, int>& counts, double n) {
  double h = 0.0;
  for (const auto& [k, v] : counts) {
    const double p = v / n;
    h -= p * std::log2(p);
  }
  return h;
}

std::map<std::string, int> tally(const std::vector<std::string>& xs) {
  std::map<std::string, int> out;
  for (const auto& x : xs) ++out[x];
  return out;
}

}  // namespace

std::vector<std::string> patterns(const Dataset& d, const FeatureMask& m) {
  std::vector<std::string> out(d.rowCount());
  for (std::size_t f = 0; f < d.featureCount(); ++f) {
    if (!m.test(f)) continue;
    const Column& col = d.feature(f);
    if (!col.isCategorical()) throw std::logic_error("oracle expects categorical features");
    for (std::size_t r = 0; r < d.rowCount(); ++r) out[r] += col.cellText(r) + '\x1f';
  }
  return out;
}

std::vector<std::string> classLabels(const Dataset& d) {
  std::vector<std::string> out(d.rowCount());
  for (std::size_t r = 0; r < d.rowCount(); ++r) out[r] = d.classColumn().cellText(r);
  return out;
}

double binaryConsistency(const Dataset& d, const FeatureMask& m) {
  const auto p = patterns(d, m);
  const auto c = classLabels(d);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[i] == p[j] && c[i] != c[j]) return 0.0;
    }
  }
  return 1.0;
}

double ieConsistency(const Dataset& d, const FeatureMask& m) {
  int inconsistent = 0;
  for (const auto& [pat, classes] : jointCounts(d, m)) {
    int total = 0, majority = 0;
    for (const auto& [c, k] : classes) {
      total += k;
      majority = std::max(majority, k);
    }
    inconsistent += total - majority;
  }
  return 1.0 - static_cast<double>(inconsistent) / static_cast<double>(d.rowCount());
}

double iepConsistency(const Dataset& d, const FeatureMask& m) {
  const auto p = patterns(d, m);
  const auto c = classLabels(d);
  long pairs = 0, bad = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[i] != p[j]) continue;
      ++pairs;
      if (c[i] != c[j]) ++bad;
    }
  }
  return pairs == 0 ? 1.0 : 1.0 - static_cast<double>(bad) / static_cast<double>(pairs);
}

double roughsetConsistency(const Dataset& d, const FeatureMask& m) {
  int positive = 0;
  for (const auto& [pat, classes] : jointCounts(d, m)) {
    if (classes.size() == 1) positive += classes.begin()->second;
  }
  return static_cast<double>(positive) / static_cast<double>(d.rowCount());
}

double mutualInformation(const Dataset& d, const FeatureMask& m) {
  const double n = static_cast<double>(d.rowCount());
  const auto ps = tally(patterns(d, m));
  const auto pc = tally(classLabels(d));
  double mi = 0.0;
  for (const auto& [pat, classes] : jointCounts(d, m)) {
    for (const auto& [c, k] : classes) {
      const double pj = k / n;
      mi += pj * std::log2(pj / ((ps.at(pat) / n) * (pc.at(c) / n)));
    }
  }
  return std::max(0.0, mi);
}

double gainRatio(const Dataset& d, const FeatureMask& m) {
  const double hs = entropyOf(tally(patterns(d, m)), static_cast<double>(d.rowCount()));
  return hs == 0.0 ? 0.0 : mutualInformation(d, m) / hs;
}

double symmetricalUncertainty(const Dataset& d, const FeatureMask& m) {
  const double n = static_cast<double>(d.rowCount());
  const double denom = entropyOf(tally(patterns(d, m)), n) + entropyOf(tally(classLabels(d)), n);
  return denom == 0.0 ? 0.0 : 2.0 * mutualInformation(d, m) / denom;
}

double giniIndex(const Dataset& d, const FeatureMask& m) {
  const double n = static_cast<double>(d.rowCount());
  double g = 0.0;
  for (const auto& [pat, classes] : jointCounts(d, m)) {
    double nv = 0.0;
    for (const auto& [c, k] : classes) nv += k;
    double purity = 0.0;
    for (const auto& [c, k] : classes) purity += (k / nv) * (k / nv);
    g += (nv / n) * purity;
  }
  return g;
}

double chiSquared(const Dataset& d, std::size_t feature) {
  const auto mask = FeatureMask::fromIndices(d.featureCount(), {feature});
  const auto joint = jointCounts(d, mask);
  const auto pc = tally(classLabels(d));
  const double n = static_cast<double>(d.rowCount());
  double chi = 0.0;
  for (const auto& [pat, classes] : joint) {
    double row = 0.0;
    for (const auto& [c, k] : classes) row += k;
    for (const auto& [c, col] : pc) {
      const double expected = row * col / n;
      const auto it = classes.find(c);
      const double observed = it == classes.end() ? 0.0 : it->second;
      chi += (observed - expected) * (observed - expected) / expected;
    }
  }
  return chi;
}

double fisher(const std::vector<double>& x, const std::vector<int>& klass) {
  std::map<int, std::vector<double>> groups;
  for (std::size_t i = 0; i < x.size(); ++i) groups[klass[i]].push_back(x[i]);
  const double mu = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  double num = 0.0, den = 0.0;
  for (const auto& [c, g] : groups) {
    const double nc = static_cast<double>(g.size());
    const double mc = std::accumulate(g.begin(), g.end(), 0.0) / nc;
    double var = 0.0;
    for (double v : g) var += (v - mc) * (v - mc);
    var /= nc;
    num += nc * (mc - mu) * (mc - mu);
    den += nc * var;
  }
  return num / std::max(den, 1e-12);
}

std::vector<double> relief(const Dataset& d) {
  const std::size_t n = d.rowCount();
  const std::size_t p = d.featureCount();
  auto diff = [&](std::size_t f, std::size_t a, std::size_t b) {
    const Column& col = d.feature(f);
    if (col.isCategorical()) return col.asCategorical().codes[a] == col.asCategorical().codes[b] ? 0.0 : 1.0;
    const auto& v = col.asNumeric().values;
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi == *lo ? 0.0 : std::abs(v[a] - v[b]) / (*hi - *lo);
  };
  const auto labels = classLabels(d);
  std::vector<double> w(p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    long hit = -1, miss = -1;
    double dh = 0.0, dm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      double dist = 0.0;
      for (std::size_t f = 0; f < p; ++f) dist += diff(f, i, j);
      if (labels[j] == labels[i]) {
        if (hit < 0 || dist < dh) hit = static_cast<long>(j), dh = dist;
      } else if (miss < 0 || dist < dm) {
        miss = static_cast<long>(j), dm = dist;
      }
    }
    if (hit < 0 || miss < 0) throw std::logic_error("oracle relief needs a hit and a miss for every row");
    for (std::size_t f = 0; f < p; ++f) {
      w[f] += diff(f, i, static_cast<std::size_t>(miss)) - diff(f, i, static_cast<std::size_t>(hit));
    }
  }
  for (auto& v : w) v /= static_cast<double>(n);
  return w;
}

double rSquared(const std::vector<std::vector<double>>& x, const std::vector<double>& y) {
  const std::size_t n = y.size();
  const std::size_t p = x.size() + 1;
  auto col = [&](std::size_t j, std::size_t r) { return j == 0 ? 1.0 : x[j - 1][r]; };
  std::vector<std::vector<double>> a(p, std::vector<double>(p + 1, 0.0));
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      for (std::size_t r = 0; r < n; ++r) a[i][j] += col(i, r) * col(j, r);
    }
    for (std::size_t r = 0; r < n; ++r) a[i][p] += col(i, r) * y[r];
  }
  for (std::size_t c = 0; c < p; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < p; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < p; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= p; ++k) a[r][k] -= f * a[c][k];
    }
  }
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sse = 0.0, sst = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    double fit = 0.0;
    for (std::size_t j = 0; j < p; ++j) fit += a[j][p] / a[j][j] * col(j, r);
    sse += (y[r] - fit) * (y[r] - fit);
    sst += (y[r] - mean) * (y[r] - mean);
  }
  return 1.0 - sse / sst;
}

int knnVote(const std::vector<std::vector<double>>& train, const std::vector<int>& labels,
            const std::vector<double>& query, int k) {
  std::vector<std::pair<double, std::size_t>> dist;
  for (std::size_t i = 0; i < train.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < query.size(); ++j) s += (train[i][j] - query[j]) * (train[i][j] - query[j]);
    dist.emplace_back(s, i);
  }
  std::sort(dist.begin(), dist.end());
  std::map<int, int> votes;
  for (int i = 0; i < k && i < static_cast<int>(dist.size()); ++i) ++votes[labels[dist[static_cast<std::size_t>(i)].second]];
  int best = -1, best_votes = -1;
  for (const auto& [label, v] : votes) {
    if (v > best_votes) best = label, best_votes = v;
  }
  return best;
}

BruteForce bruteForce(std::size_t n, const std::function<double(const FeatureMask&)>& score, bool maximize) {
  BruteForce out;
  out.best = maximize ? -INFINITY : INFINITY;
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
    FeatureMask m(n);
    for (std::size_t f = 0; f < n; ++f) {
      if ((bits >> f) & 1u) m.set(f);
    }
    const double v = score(m);
    ++out.evaluated;
    if (maximize ? v > out.best : v < out.best) {
      out.best = v;
      out.best_masks.clear();
    }
    if (v == out.best) out.best_masks.insert(m.toString());
  }
  return out;
}

}  // namespace fsel::oracle
