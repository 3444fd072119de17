#include <map>
#include <mutex>
#include <unordered_map>
#include <utility>

#include "superint/jet.hpp"

namespace superint::taylor {

namespace {

void enumerate_degree(std::size_t nvars, unsigned degree, std::vector<unsigned>& cur, std::size_t pos,
                      std::vector<MultiIndex>& out) {
  if (pos + 1 == nvars) {
    cur[pos] = degree;
    out.emplace_back(cur);
    return;
  }
  for (unsigned e = degree + 1; e-- > 0;) {
    cur[pos] = e;
    enumerate_degree(nvars, degree - e, cur, pos + 1, out);
  }
}

std::uint64_t pack(const MultiIndex& idx, unsigned order) {
  std::uint64_t key = 0;
  for (std::size_t i = idx.arity(); i-- > 0;) key = key * (order + 1) + idx[i];
  return key;
}

struct LayoutCache {
  std::mutex mu;
  std::map<std::pair<std::size_t, unsigned>, std::shared_ptr<const JetLayout>> layouts;
};

LayoutCache& cache() {
  static LayoutCache c;
  return c;
}

}  // namespace

JetLayout::JetLayout(std::size_t nvars, unsigned order) : nvars_(nvars), order_(order) {
  if (nvars == 0) throw ShapeMismatch("jets need at least one variable");
  std::vector<unsigned> cur(nvars, 0);
  for (unsigned d = 0; d <= order; ++d) {
    enumerate_degree(nvars, d, cur, 0, indices_);
    prefix_.push_back(indices_.size());
  }
}

std::shared_ptr<const JetLayout> JetLayout::get(std::size_t nvars, unsigned order) {
  auto& c = cache();
  std::lock_guard<std::mutex> lock(c.mu);
  auto key = std::make_pair(nvars, order);
  if (auto it = c.layouts.find(key); it != c.layouts.end()) return it->second;

  auto layout = std::make_shared<JetLayout>(nvars, order);
  auto& table = layout->lookup_;
  for (std::size_t i = 0; i < layout->indices_.size(); ++i)
    table.emplace(pack(layout->indices_[i], order), static_cast<std::uint32_t>(i));

  auto locate = [&](const MultiIndex& idx) -> std::uint32_t {
    if (idx.total_degree() > order) return npos;
    auto it = table.find(pack(idx, order));
    return it == table.end() ? npos : it->second;
  };
  const auto n = layout->indices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto di = layout->indices_[i].total_degree();
    for (std::size_t j = 0; j < layout->prefix_[order - di]; ++j) {
      auto k = locate(layout->indices_[i] + layout->indices_[j]);
      layout->products_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), k});
    }
  }
  layout->raise_.resize(n * nvars, npos);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t v = 0; v < nvars; ++v)
      layout->raise_[i * nvars + v] = locate(layout->indices_[i] + MultiIndex::unit(nvars, v));

  c.layouts.emplace(key, layout);
  return layout;
}

std::uint32_t JetLayout::find(const MultiIndex& idx) const {
  if (idx.arity() != nvars_ || idx.total_degree() > order_) return npos;
  auto it = lookup_.find(pack(idx, order_));
  return it == lookup_.end() ? npos : it->second;
}

}  // namespace superint::taylor
