#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace alloyfa::oracle {

struct SigInfo {
  std::string name;
  int parent = -1;
  bool abstract = false;
};

struct RelInfo {
  std::string name;
  std::vector<int> columns;  // signature index per column, -1 for univ
  int arity() const { return static_cast<int>(columns.size()); }
};

struct Vocabulary {
  std::vector<SigInfo> sigs;
  std::vector<RelInfo> rels;

  int sigIndex(const std::string& name) const;
  int relIndex(const std::string& name) const;
  bool isAncestor(int anc, int sig) const;
  // Keeps only the relations named in `keep` (signatures are kept).
  Vocabulary restrictedTo(const std::vector<std::string>& keep) const;
};

// Set of k-tuples over atoms 0..n-1; tuple (x1..xk) has index sum x_j n^(k-j).
class TupleSet {
 public:
  TupleSet() = default;
  TupleSet(int universe, int arity);

  int universe() const { return n_; }
  int arity() const { return k_; }
  std::size_t capacity() const { return cap_; }

  bool has(std::size_t idx) const { return (bits_[idx >> 6] >> (idx & 63)) & 1U; }
  void put(std::size_t idx, bool v = true) {
    if (v)
      bits_[idx >> 6] |= std::uint64_t{1} << (idx & 63);
    else
      bits_[idx >> 6] &= ~(std::uint64_t{1} << (idx & 63));
  }
  bool has(const std::vector<int>& t) const { return has(index(t)); }
  void put(const std::vector<int>& t, bool v = true) { put(index(t), v); }
  std::size_t index(const std::vector<int>& t) const;
  std::vector<int> tuple(std::size_t idx) const;

  bool empty() const;
  std::size_t count() const;
  const std::vector<std::uint64_t>& words() const { return bits_; }
  std::vector<std::uint64_t>& words() { return bits_; }
  bool operator==(const TupleSet& o) const = default;

 private:
  int n_ = 0, k_ = 0;
  std::size_t cap_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct FiniteModel {
  int universe = 0;
  const Vocabulary* vocab = nullptr;
  std::vector<std::uint64_t> sigAtoms;  // bitmask of atoms per signature (incl. descendants)
  std::vector<TupleSet> rels;

  std::string describe() const;
};

struct EnumOptions {
  int minUniverse = 1;
  int maxUniverse = 3;
  std::uint64_t exhaustiveCap = 200000;  // more models than this: sample instead
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0x5eed;
};

struct EnumStats {
  std::uint64_t models = 0;
  bool exhaustive = true;
  bool stopped = false;
};

// Number of declaration-respecting models (saturates at UINT64_MAX).
std::uint64_t countModels(const Vocabulary& v, int universe);

// Visits every model up to isomorphism of atom order (atoms are placed in
// non-decreasing signature order), or a seeded sample when there are too many.
// The visitor returns false to stop.
EnumStats enumerateModels(const Vocabulary& v, const EnumOptions& opt,
                          const std::function<bool(const FiniteModel&)>& visit);

// A single random model of the given size.
FiniteModel randomModel(const Vocabulary& v, int universe, std::uint64_t& state);

// splitmix64 step; used for every seeded choice so results are reproducible.
std::uint64_t nextRandom(std::uint64_t& state);

}  // namespace alloyfa::oracle
