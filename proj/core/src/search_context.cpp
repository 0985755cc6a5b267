#include "search_context.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "fsel/error.hpp"

namespace fsel::detail {

bool BestTracker::offer(const FeatureMask& m, double value) {
  if (masks_.empty() || isBetter(value, value_, maximize_)) {
    value_ = value;
    masks_.assign(1, m);
    seen_.clear();
    seen_.insert(m);
    return true;
  }
  if (value == value_ && seen_.insert(m).second) masks_.push_back(m);
  return false;
}

SearchContext::SearchContext(const Dataset& d, const Measure& m, const SearchOptions& opts,
                             std::string_view search)
    : opts_(opts),
      width_(d.featureCount()),
      maximize_(m.maximize()),
      tracker_(m.maximize()) {
  requireSetMeasure(m, search);
  if (width_ == 0) throw Error(ErrorCode::InvalidArgument, std::string(search) + ": dataset has no features");
  scorer_ = m.bind(d);
}

double SearchContext::evaluate(const FeatureMask& m) {
  ++evaluations_;
  return scorer_(m);
}

std::vector<double> SearchContext::evaluateBatch(std::span<const FeatureMask> masks) {
  std::vector<double> out(masks.size());
  evaluations_ += masks.size();
  const std::size_t workers = std::min(opts_.threads, masks.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < masks.size(); ++i) out[i] = scorer_(masks[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= masks.size()) return;
      try {
        out[i] = scorer_(masks[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(masks.size());
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

void SearchContext::record(std::size_t iteration, std::string stage, std::string label,
                           std::vector<FeatureMask> masks, std::vector<double> values) {
  trace_.push_back({iteration, std::move(stage), std::move(label), std::move(masks), std::move(values)});
  if (opts_.observe) opts_.observe(trace_.back());
}

void SearchContext::log(const std::string& line) const {
  if (opts_.log) opts_.log(line);
}

SearchResult SearchContext::finish() {
  SearchResult r;
  r.best_masks = tracker_.masks();
  r.best_value = tracker_.value();
  r.trace = std::move(trace_);
  r.evaluations = evaluations_;
  return r;
}

SearchResult SearchContext::finishWith(const FeatureMask& best, double value) {
  SearchResult r;
  r.best_masks = {best};
  r.best_value = value;
  r.trace = std::move(trace_);
  r.evaluations = evaluations_;
  return r;
}

std::size_t argBest(std::span<const double> values, bool maximize) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (isBetter(values[i], values[best], maximize)) best = i;
  }
  return best;
}

std::string formatFixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace fsel::detail
