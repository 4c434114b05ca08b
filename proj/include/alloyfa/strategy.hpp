#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Strategic rewriting over any term type with a Traits class providing
//   static std::vector<T> children(const T&);
//   static T withChild(const T&, std::size_t i, T child);
//   static Context childContext(const T&, std::size_t i, Context);
//   static bool equal(const T&, const T&);
namespace alloyfa::strategy {

struct Context {
  int depth = 0;         // bound levels in scope
  bool special = false;  // inside the ∀𝐱,𝐲 block
};

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(long limit)
      : std::runtime_error("rewrite budget of " + std::to_string(limit) + " steps exhausted") {}
};

class ReplayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class T, class Traits>
class Engine {
 public:
  using Fn = std::function<std::optional<T>(const T&, const Context&)>;
  struct Rule {
    std::string name;
    Fn fn;
  };
  struct Step {
    std::string rule;
    std::vector<std::size_t> path;  // child indices from the root
    T before, after;                // whole terms
  };
  using Strategy = std::function<std::optional<T>(Engine&, const T&, const Context&)>;

  explicit Engine(long budget = 10000, bool record = true) : budget_(budget), record_(record) {}

  // Runs s on t; the trace accumulates across runs.
  std::optional<T> run(const Strategy& s, const T& t, const Context& ctx = {}) {
    stack_.clear();
    path_.clear();
    return s(*this, t, ctx);
  }

  const std::vector<Step>& trace() const { return trace_; }
  long steps() const { return steps_; }
  long budget() const { return budget_; }

  // Combinators.
  static Strategy rule(Rule r) {
    return [r = std::move(r)](Engine& e, const T& t, const Context& c) -> std::optional<T> {
      auto res = r.fn(t, c);
      if (!res || Traits::equal(*res, t)) return std::nullopt;
      e.fire(r.name, t, *res);
      return res;
    };
  }

  static Strategy fail() {
    return [](Engine&, const T&, const Context&) -> std::optional<T> { return std::nullopt; };
  }

  static Strategy identity() {
    return [](Engine&, const T& t, const Context&) -> std::optional<T> { return t; };
  }

  // a ▷ b
  static Strategy seq(Strategy a, Strategy b) {
    return [a = std::move(a), b = std::move(b)](Engine& e, const T& t, const Context& c) -> std::optional<T> {
      // Steps of a failed sequence are dropped from the trace.
      auto mark = e.trace_.size();
      auto r = a(e, t, c);
      if (r) r = b(e, *r, c);
      if (!r) e.trace_.erase(e.trace_.begin() + static_cast<long>(mark), e.trace_.end());
      return r;
    };
  }

  // a ⊘ b
  static Strategy choice(Strategy a, Strategy b) {
    return [a = std::move(a), b = std::move(b)](Engine& e, const T& t, const Context& c) -> std::optional<T> {
      if (auto r = a(e, t, c)) return r;
      return b(e, t, c);
    };
  }

  static Strategy choice(std::vector<Strategy> ss) {
    return [ss = std::move(ss)](Engine& e, const T& t, const Context& c) -> std::optional<T> {
      for (const auto& s : ss)
        if (auto r = s(e, t, c)) return r;
      return std::nullopt;
    };
  }

  static Strategy rules(const std::vector<Rule>& rs) {
    std::vector<Strategy> ss;
    for (const auto& r : rs) ss.push_back(rule(r));
    return choice(std::move(ss));
  }

  // Applies s until it fails; always succeeds.
  static Strategy many(Strategy s) {
    return [s = std::move(s)](Engine& e, const T& t, const Context& c) -> std::optional<T> {
      T cur = t;
      while (auto r = s(e, cur, c)) cur = *r;
      return cur;
    };
  }

  static Strategy attempt(Strategy s) { return choice(std::move(s), identity()); }

  // s at exactly one position, scanning leftmost-innermost.
  static Strategy once(Strategy s) {
    auto self = std::make_shared<Strategy>();
    *self = [s = std::move(s), weak = std::weak_ptr<Strategy>(self)](Engine& e, const T& t,
                                                                     const Context& c) -> std::optional<T> {
      auto kids = Traits::children(t);
      auto rec = weak.lock();
      for (std::size_t i = 0; i < kids.size(); ++i) {
        e.stack_.push_back({t, i});
        e.path_.push_back(i);
        auto r = (*rec)(e, kids[i], Traits::childContext(t, i, c));
        e.stack_.pop_back();
        e.path_.pop_back();
        if (r) return Traits::withChild(t, i, std::move(*r));
      }
      return s(e, t, c);
    };
    return [self](Engine& e, const T& t, const Context& c) { return (*self)(e, t, c); };
  }

  // Re-applies every step of a trace from `initial`, checking each snapshot.
  static T replay(const T& initial, const std::vector<Step>& trace, const std::vector<Rule>& registry) {
    T cur = initial;
    for (std::size_t k = 0; k < trace.size(); ++k) {
      const auto& st = trace[k];
      if (!Traits::equal(cur, st.before)) throw ReplayError("step " + std::to_string(k) + " starts elsewhere");
      const Rule* r = nullptr;
      for (const auto& q : registry)
        if (q.name == st.rule) r = &q;
      if (!r) throw ReplayError("unknown rule " + st.rule);
      cur = rewriteAt(cur, st.path, 0, {}, *r);
      if (!Traits::equal(cur, st.after)) throw ReplayError("step " + std::to_string(k) + " (" + st.rule + ") differs");
    }
    return cur;
  }

 private:
  struct Frame {
    T parent;
    std::size_t index;
  };

  static T rewriteAt(const T& t, const std::vector<std::size_t>& path, std::size_t k, const Context& c,
                     const Rule& r) {
    if (k == path.size()) {
      auto res = r.fn(t, c);
      if (!res) throw ReplayError("rule " + r.name + " no longer applies");
      return *res;
    }
    auto kids = Traits::children(t);
    std::size_t i = path[k];
    if (i >= kids.size()) throw ReplayError("bad path");
    return Traits::withChild(t, i, rewriteAt(kids[i], path, k + 1, Traits::childContext(t, i, c), r));
  }

  T rebuild(T focus) const {
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) focus = Traits::withChild(it->parent, it->index, focus);
    return focus;
  }

  void fire(const std::string& name, const T& before, const T& after) {
    if (++steps_ > budget_) throw BudgetExceeded(budget_);
    if (record_) trace_.push_back({name, path_, rebuild(before), rebuild(after)});
  }

  long budget_;
  bool record_;
  long steps_ = 0;
  std::vector<Frame> stack_;
  std::vector<std::size_t> path_;
  std::vector<Step> trace_;
};

}  // namespace alloyfa::strategy
