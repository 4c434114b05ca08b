#include "alloyfa/model.hpp"

#include <bit>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace alloyfa::oracle {

int Vocabulary::sigIndex(const std::string& name) const {
  for (std::size_t k = 0; k < sigs.size(); ++k)
    if (sigs[k].name == name) return static_cast<int>(k);
  return -1;
}

int Vocabulary::relIndex(const std::string& name) const {
  for (std::size_t k = 0; k < rels.size(); ++k)
    if (rels[k].name == name) return static_cast<int>(k);
  return -1;
}

bool Vocabulary::isAncestor(int anc, int sig) const {
  for (int s = sig; s >= 0; s = sigs[s].parent)
    if (s == anc) return true;
  return false;
}

Vocabulary Vocabulary::restrictedTo(const std::vector<std::string>& keep) const {
  Vocabulary out;
  out.sigs = sigs;
  for (const auto& r : rels)
    for (const auto& k : keep)
      if (k == r.name) {
        out.rels.push_back(r);
        break;
      }
  return out;
}

TupleSet::TupleSet(int universe, int arity) : n_(universe), k_(arity) {
  cap_ = 1;
  for (int j = 0; j < arity; ++j) cap_ *= static_cast<std::size_t>(universe);
  bits_.assign((cap_ + 63) / 64, 0);
}

std::size_t TupleSet::index(const std::vector<int>& t) const {
  if (static_cast<int>(t.size()) != k_) throw std::logic_error("tuple arity mismatch");
  std::size_t idx = 0;
  for (int x : t) idx = idx * static_cast<std::size_t>(n_) + static_cast<std::size_t>(x);
  return idx;
}

std::vector<int> TupleSet::tuple(std::size_t idx) const {
  std::vector<int> t(static_cast<std::size_t>(k_));
  for (int j = k_ - 1; j >= 0; --j) {
    t[static_cast<std::size_t>(j)] = static_cast<int>(idx % static_cast<std::size_t>(n_));
    idx /= static_cast<std::size_t>(n_);
  }
  return t;
}

bool TupleSet::empty() const {
  for (auto w : bits_)
    if (w) return false;
  return true;
}

std::size_t TupleSet::count() const {
  std::size_t c = 0;
  for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::string FiniteModel::describe() const {
  std::ostringstream os;
  os << "universe {";
  for (int a = 0; a < universe; ++a) os << (a ? "," : "") << 'a' << a;
  os << "}";
  if (!vocab) return os.str();
  for (std::size_t s = 0; s < vocab->sigs.size(); ++s) {
    os << "; " << vocab->sigs[s].name << " = {";
    bool first = true;
    for (int a = 0; a < universe; ++a)
      if ((sigAtoms[s] >> a) & 1U) {
        os << (first ? "" : ",") << 'a' << a;
        first = false;
      }
    os << "}";
  }
  for (std::size_t r = 0; r < vocab->rels.size(); ++r) {
    os << "; " << vocab->rels[r].name << " = {";
    bool first = true;
    for (std::size_t idx = 0; idx < rels[r].capacity(); ++idx) {
      if (!rels[r].has(idx)) continue;
      os << (first ? "" : ",") << '(';
      auto t = rels[r].tuple(idx);
      for (std::size_t j = 0; j < t.size(); ++j) os << (j ? "," : "") << 'a' << t[j];
      os << ')';
      first = false;
    }
    os << "}";
  }
  return os.str();
}

std::uint64_t nextRandom(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

std::vector<int> placements(const Vocabulary& v) {
  std::vector<int> out;
  if (v.sigs.empty()) return {-1};
  for (std::size_t s = 0; s < v.sigs.size(); ++s) {
    bool hasChild = false;
    for (const auto& t : v.sigs)
      if (t.parent == static_cast<int>(s)) hasChild = true;
    if (v.sigs[s].abstract && hasChild) continue;
    out.push_back(static_cast<int>(s));
  }
  return out;
}

// Fills signature extents from a per-atom placement.
void placeAtoms(const Vocabulary& v, const std::vector<int>& place, FiniteModel& m) {
  m.sigAtoms.assign(v.sigs.size(), 0);
  for (std::size_t a = 0; a < place.size(); ++a)
    for (int s = place[a]; s >= 0; s = v.sigs[static_cast<std::size_t>(s)].parent)
      m.sigAtoms[static_cast<std::size_t>(s)] |= std::uint64_t{1} << a;
}

// Tuple indices each relation may contain under the typing of its columns.
std::vector<std::vector<std::size_t>> candidates(const Vocabulary& v, const FiniteModel& m) {
  std::vector<std::vector<std::size_t>> out;
  std::uint64_t all = m.universe >= 64 ? kSat : (std::uint64_t{1} << m.universe) - 1;
  for (const auto& r : v.rels) {
    std::vector<std::size_t> idx{0};
    for (int c : r.columns) {
      std::uint64_t mask = c < 0 ? all : m.sigAtoms[static_cast<std::size_t>(c)];
      std::vector<std::size_t> next;
      for (auto base : idx)
        for (int a = 0; a < m.universe; ++a)
          if ((mask >> a) & 1U)
            next.push_back(base * static_cast<std::size_t>(m.universe) + static_cast<std::size_t>(a));
      idx = std::move(next);
    }
    out.push_back(std::move(idx));
  }
  return out;
}

FiniteModel emptyModel(const Vocabulary& v, int n) {
  FiniteModel m;
  m.universe = n;
  m.vocab = &v;
  for (const auto& r : v.rels) m.rels.emplace_back(n, r.arity());
  return m;
}

// Calls f on every non-decreasing sequence of length n over [0,k).
template <class F>
bool sortedSequences(int n, int k, F&& f) {
  std::vector<int> seq(static_cast<std::size_t>(n), 0);
  while (true) {
    if (!f(seq)) return false;
    int j = n - 1;
    while (j >= 0 && seq[static_cast<std::size_t>(j)] == k - 1) --j;
    if (j < 0) return true;
    int val = seq[static_cast<std::size_t>(j)] + 1;
    for (int t = j; t < n; ++t) seq[static_cast<std::size_t>(t)] = val;
  }
}

std::uint64_t addSat(std::uint64_t a, std::uint64_t b) { return a > kSat - b ? kSat : a + b; }

}  // namespace

std::uint64_t countModels(const Vocabulary& v, int universe) {
  auto place = placements(v);
  std::uint64_t total = 0;
  FiniteModel m = emptyModel(v, universe);
  sortedSequences(universe, static_cast<int>(place.size()), [&](const std::vector<int>& seq) {
    std::vector<int> p;
    for (int s : seq) p.push_back(place[static_cast<std::size_t>(s)]);
    placeAtoms(v, p, m);
    std::size_t bits = 0;
    for (const auto& c : candidates(v, m)) bits += c.size();
    total = addSat(total, bits >= 63 ? kSat : std::uint64_t{1} << bits);
    return true;
  });
  return total;
}

FiniteModel randomModel(const Vocabulary& v, int universe, std::uint64_t& state) {
  auto place = placements(v);
  FiniteModel m = emptyModel(v, universe);
  std::vector<int> p;
  for (int a = 0; a < universe; ++a) p.push_back(place[nextRandom(state) % place.size()]);
  placeAtoms(v, p, m);
  auto cand = candidates(v, m);
  for (std::size_t r = 0; r < cand.size(); ++r)
    for (auto idx : cand[r])
      if (nextRandom(state) & 1U) m.rels[r].put(idx);
  return m;
}

EnumStats enumerateModels(const Vocabulary& v, const EnumOptions& opt,
                          const std::function<bool(const FiniteModel&)>& visit) {
  EnumStats st;
  auto place = placements(v);
  std::uint64_t state = opt.seed;
  for (int n = opt.minUniverse; n <= opt.maxUniverse; ++n) {
    if (countModels(v, n) > opt.exhaustiveCap) {
      st.exhaustive = false;
      for (std::uint64_t k = 0; k < opt.samples; ++k) {
        FiniteModel m = randomModel(v, n, state);
        ++st.models;
        if (!visit(m)) {
          st.stopped = true;
          return st;
        }
      }
      continue;
    }
    FiniteModel m = emptyModel(v, n);
    bool go = sortedSequences(n, static_cast<int>(place.size()), [&](const std::vector<int>& seq) {
      std::vector<int> p;
      for (int s : seq) p.push_back(place[static_cast<std::size_t>(s)]);
      placeAtoms(v, p, m);
      auto cand = candidates(v, m);
      std::vector<std::pair<std::size_t, std::size_t>> slots;  // (relation, tuple index)
      for (std::size_t r = 0; r < cand.size(); ++r)
        for (auto idx : cand[r]) slots.emplace_back(r, idx);
      std::uint64_t total = std::uint64_t{1} << slots.size();
      for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (auto& rs : m.rels) std::fill(rs.words().begin(), rs.words().end(), 0);
        for (std::size_t b = 0; b < slots.size(); ++b)
          if ((mask >> b) & 1U) m.rels[slots[b].first].put(slots[b].second);
        ++st.models;
        if (!visit(m)) return false;
      }
      return true;
    });
    if (!go) {
      st.stopped = true;
      return st;
    }
  }
  return st;
}

}  // namespace alloyfa::oracle
