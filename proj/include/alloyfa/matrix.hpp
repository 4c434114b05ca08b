#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace alloyfa::oracle {

// Dense boolean matrix; row i holds the inputs related to output i.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) { reset(rows, cols); }

  void reset(std::size_t rows, std::size_t cols);
  void clear();
  void fill();

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words() const { return words_; }

  bool get(std::size_t r, std::size_t c) const {
    return (bits_[r * words_ + (c >> 6)] >> (c & 63)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool v = true) {
    auto& w = bits_[r * words_ + (c >> 6)];
    if (v)
      w |= std::uint64_t{1} << (c & 63);
    else
      w &= ~(std::uint64_t{1} << (c & 63));
  }
  std::uint64_t* row(std::size_t r) { return bits_.data() + r * words_; }
  const std::uint64_t* row(std::size_t r) const { return bits_.data() + r * words_; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_;
  }
  bool subsetOf(const Matrix& o) const;
  std::size_t count() const;
  std::string str() const;

 private:
  friend void complement(const Matrix&, Matrix&);
  std::size_t rows_ = 0, cols_ = 0, words_ = 0;
  std::vector<std::uint64_t> bits_;
};

void identity(std::size_t n, Matrix& out);
void unite(const Matrix& a, const Matrix& b, Matrix& out);
void intersect(const Matrix& a, const Matrix& b, Matrix& out);
void complement(const Matrix& a, Matrix& out);
void transpose(const Matrix& a, Matrix& out);
void compose(const Matrix& a, const Matrix& b, Matrix& out);
// (x,y) (R∇S) z iff x R z and y S z; bRows is the output size of S.
void forkOf(const Matrix& r, const Matrix& s, Matrix& out);
void productOf(const Matrix& r, const Matrix& s, Matrix& out);
// Reflexive-transitive closure.
void closure(const Matrix& a, Matrix& out);
// π1 : a <- (a,b) and π2 : b <- (a,b).
void firstProjection(std::size_t a, std::size_t b, Matrix& out);
void secondProjection(std::size_t a, std::size_t b, Matrix& out);

}  // namespace alloyfa::oracle
