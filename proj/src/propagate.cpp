#include "bcs/propagate.hpp"

#include <chrono>
#include <deque>
#include <unordered_map>

namespace bcs {

namespace {

// FIFO queue with a membership set; an item is never queued twice.
class Agenda {
 public:
  explicit Agenda(size_t n) : in_(n, 0) {}

  bool push(int i, Stats* stats) {
    if (in_[static_cast<size_t>(i)]) return false;
    in_[static_cast<size_t>(i)] = 1;
    q_.push_back(i);
    if (stats) ++stats->enqueues;
    return true;
  }

  int pop(bool lifo) {
    int i;
    if (lifo) {
      i = q_.back();
      q_.pop_back();
    } else {
      i = q_.front();
      q_.pop_front();
    }
    in_[static_cast<size_t>(i)] = 0;
    return i;
  }

  bool empty() const { return q_.empty(); }

 private:
  std::deque<int> q_;
  std::vector<char> in_;
};

bool contains_div(const Expr& e) {
  if (e.kind == ExprKind::Div) return true;
  if (e.a && contains_div(*e.a)) return true;
  return e.b && contains_div(*e.b);
}

Box all_empty(size_t n) { return Box(n, Interval::empty()); }

}  // namespace

std::optional<Method> method_from_name(std::string_view name) {
  if (name == "hc3") return Method::Hc3;
  if (name == "hc3sb") return Method::Hc3sb;
  if (name == "hc4") return Method::Hc4;
  if (name == "hc4sb") return Method::Hc4sb;
  return std::nullopt;
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::Hc3: return "hc3";
    case Method::Hc3sb: return "hc3sb";
    case Method::Hc4: return "hc4";
    case Method::Hc4sb: return "hc4sb";
  }
  return "?";
}

bool sbox_hc4(const Decomposition& dec, Box& d, std::vector<int>* narrowed,
              Stats* stats, int* sweeps) {
  int s = 0;
  std::vector<int> local;
  for (;;) {
    ++s;
    local.clear();
    if (!hc4_revise(dec, d, &local, stats)) {
      if (sweeps) *sweeps = s;
      return false;
    }
    if (local.empty()) break;
    if (narrowed) narrowed->insert(narrowed->end(), local.begin(), local.end());
  }
  if (sweeps) *sweeps = s;
  return true;
}

bool sbox_hc3(const FlatProblem& flat, int constraint, Box& ext,
              std::vector<int>* narrowed, Stats* stats) {
  auto [begin, end] = flat.constraint_prims[static_cast<size_t>(constraint)];

  // variable -> primitive offsets within this constraint's range
  std::unordered_map<int, std::vector<int>> watchers;
  for (int pi = begin; pi < end; ++pi)
    for (int v : prim_scope(flat.primitives[static_cast<size_t>(pi)]))
      watchers[v].push_back(pi - begin);

  Agenda agenda(static_cast<size_t>(end - begin));
  for (int o = 0; o < end - begin; ++o) agenda.push(o, stats);

  std::vector<int> local;
  while (!agenda.empty()) {
    int o = agenda.pop(false);
    const Primitive& prim = flat.primitives[static_cast<size_t>(begin + o)];
    local.clear();
    if (!hc3_revise(prim, ext, &local, stats)) return false;
    const bool suppress_self = revisit_stable(prim);
    for (int v : local) {
      if (v < flat.n_original && narrowed) narrowed->push_back(v);
      for (int w : watchers[v])
        if (w != o || !suppress_self) agenda.push(w, stats);
    }
  }
  return true;
}

Propagator::Propagator(const Problem& p, Method m) : p_(&p), m_(m) {
  flat_ = decompose_problem(p);
  decs_.reserve(p.constraints.size());
  for (const Constraint& c : p.constraints) {
    decs_.push_back(decompose(c, p));
    bool one_pass = is_admissible(c) &&
                    !contains_div(*c.lhs) && !contains_div(*c.rhs);
    self_requeue_.push_back(one_pass ? 0 : 1);
  }

  prim_watchers_.resize(flat_.domains.size());
  prim_stable_.reserve(flat_.primitives.size());
  for (size_t pi = 0; pi < flat_.primitives.size(); ++pi) {
    for (int v : prim_scope(flat_.primitives[pi]))
      prim_watchers_[static_cast<size_t>(v)].push_back(static_cast<int>(pi));
    prim_stable_.push_back(revisit_stable(flat_.primitives[pi]) ? 1 : 0);
  }

  ctr_watchers_.resize(p.variables.size());
  for (size_t j = 0; j < p.constraints.size(); ++j)
    for (int v : p.constraints[j].scope)
      ctr_watchers_[static_cast<size_t>(v)].push_back(static_cast<int>(j));
}

Box Propagator::run_hc3(Box d, Stats* stats, bool lifo) const {
  const size_t n = static_cast<size_t>(flat_.n_original);
  Box ext = flat_.domains;
  for (size_t i = 0; i < n; ++i) ext[i] = d[i];

  Agenda agenda(flat_.primitives.size());
  for (size_t pi = 0; pi < flat_.primitives.size(); ++pi)
    agenda.push(static_cast<int>(pi), stats);

  std::vector<int> narrowed;
  while (!agenda.empty()) {
    int pi = agenda.pop(lifo);
    narrowed.clear();
    if (!hc3_revise(flat_.primitives[static_cast<size_t>(pi)], ext, &narrowed,
                    stats))
      return all_empty(n);
    for (int v : narrowed)
      for (int w : prim_watchers_[static_cast<size_t>(v)])
        if (w != pi || !prim_stable_[static_cast<size_t>(pi)])
          agenda.push(w, stats);
  }
  d.assign(ext.begin(), ext.begin() + static_cast<long>(n));
  return d;
}

Box Propagator::run_hc3sb(Box d, Stats* stats, bool lifo) const {
  const size_t n = static_cast<size_t>(flat_.n_original);
  Box ext = flat_.domains;
  for (size_t i = 0; i < n; ++i) ext[i] = d[i];

  Agenda agenda(p_->constraints.size());
  for (size_t j = 0; j < p_->constraints.size(); ++j)
    agenda.push(static_cast<int>(j), stats);

  std::vector<int> narrowed;
  while (!agenda.empty()) {
    int j = agenda.pop(lifo);
    narrowed.clear();
    if (!sbox_hc3(flat_, j, ext, &narrowed, stats)) return all_empty(n);
    for (int v : narrowed)
      for (int w : ctr_watchers_[static_cast<size_t>(v)])
        if (w != j) agenda.push(w, stats);
  }
  d.assign(ext.begin(), ext.begin() + static_cast<long>(n));
  return d;
}

Box Propagator::run_hc4(Box d, Stats* stats, bool lifo, bool sbox) const {
  Agenda agenda(p_->constraints.size());
  for (size_t j = 0; j < p_->constraints.size(); ++j)
    agenda.push(static_cast<int>(j), stats);

  std::vector<int> narrowed;
  while (!agenda.empty()) {
    int j = agenda.pop(lifo);
    narrowed.clear();
    bool ok = sbox ? sbox_hc4(decs_[static_cast<size_t>(j)], d, &narrowed,
                              stats, nullptr)
                   : hc4_revise(decs_[static_cast<size_t>(j)], d, &narrowed,
                                stats);
    if (!ok) return all_empty(d.size());
    for (int v : narrowed)
      for (int w : ctr_watchers_[static_cast<size_t>(v)])
        if (w != j || (!sbox && self_requeue_[static_cast<size_t>(j)]))
          agenda.push(w, stats);
  }
  return d;
}

Box Propagator::propagate(Box d, Stats* stats, bool lifo) const {
  auto t0 = std::chrono::steady_clock::now();
  Box r;
  if (box_is_empty(d)) {
    r = all_empty(d.size());
  } else {
    switch (m_) {
      case Method::Hc3: r = run_hc3(std::move(d), stats, lifo); break;
      case Method::Hc3sb: r = run_hc3sb(std::move(d), stats, lifo); break;
      case Method::Hc4: r = run_hc4(std::move(d), stats, lifo, false); break;
      case Method::Hc4sb: r = run_hc4(std::move(d), stats, lifo, true); break;
    }
  }
  if (stats) {
    stats->wall_time +=
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
  }
  return r;
}

Box bounds_consistency(const Problem& p, Method m, Box d, Stats* stats,
                       bool lifo) {
  return Propagator(p, m).propagate(std::move(d), stats, lifo);
}

}  // namespace bcs
