#include "alloyfa/matrix.hpp"

#include <bit>
#include <cassert>
#include <stdexcept>

namespace alloyfa::oracle {

namespace {

std::uint64_t tailMask(std::size_t cols) {
  std::size_t r = cols & 63;
  return r == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
}

void sameShape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::logic_error("matrix shape mismatch");
}

}  // namespace

void Matrix::reset(std::size_t rows, std::size_t cols) {
  rows_ = rows;
  cols_ = cols;
  words_ = (cols + 63) / 64;
  bits_.assign(rows_ * words_, 0);
}

void Matrix::clear() { std::fill(bits_.begin(), bits_.end(), 0); }

void Matrix::fill() {
  if (words_ == 0) return;
  std::uint64_t last = tailMask(cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    auto* p = row(r);
    for (std::size_t w = 0; w + 1 < words_; ++w) p[w] = ~std::uint64_t{0};
    p[words_ - 1] = last;
  }
}

bool Matrix::subsetOf(const Matrix& o) const {
  sameShape(*this, o);
  for (std::size_t k = 0; k < bits_.size(); ++k)
    if (bits_[k] & ~o.bits_[k]) return false;
  return true;
}

std::size_t Matrix::count() const {
  std::size_t c = 0;
  for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::string Matrix::str() const {
  std::string s;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) s += get(r, c) ? '1' : '0';
    s += '\n';
  }
  return s;
}

void identity(std::size_t n, Matrix& out) {
  out.reset(n, n);
  for (std::size_t k = 0; k < n; ++k) out.set(k, k);
}

void unite(const Matrix& a, const Matrix& b, Matrix& out) {
  sameShape(a, b);
  out.reset(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t w = 0; w < a.words(); ++w) out.row(r)[w] = a.row(r)[w] | b.row(r)[w];
}

void intersect(const Matrix& a, const Matrix& b, Matrix& out) {
  sameShape(a, b);
  out.reset(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t w = 0; w < a.words(); ++w) out.row(r)[w] = a.row(r)[w] & b.row(r)[w];
}

void complement(const Matrix& a, Matrix& out) {
  out.reset(a.rows(), a.cols());
  if (a.words() == 0) return;
  std::uint64_t last = tailMask(a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t w = 0; w < a.words(); ++w) out.row(r)[w] = ~a.row(r)[w];
    out.row(r)[a.words() - 1] &= last;
  }
}

void transpose(const Matrix& a, Matrix& out) {
  out.reset(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto* p = a.row(r);
    for (std::size_t w = 0; w < a.words(); ++w) {
      std::uint64_t bits = p[w];
      while (bits) {
        std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        out.set(c, r);
      }
    }
  }
}

void compose(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.cols() != b.rows()) throw std::logic_error("composition shape mismatch");
  out.reset(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto* p = a.row(r);
    auto* o = out.row(r);
    for (std::size_t w = 0; w < a.words(); ++w) {
      std::uint64_t bits = p[w];
      while (bits) {
        std::size_t k = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        const auto* q = b.row(k);
        for (std::size_t v = 0; v < b.words(); ++v) o[v] |= q[v];
      }
    }
  }
}

void forkOf(const Matrix& r, const Matrix& s, Matrix& out) {
  if (r.cols() != s.cols()) throw std::logic_error("fork shape mismatch");
  out.reset(r.rows() * s.rows(), r.cols());
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < s.rows(); ++j) {
      auto* o = out.row(i * s.rows() + j);
      for (std::size_t w = 0; w < r.words(); ++w) o[w] = r.row(i)[w] & s.row(j)[w];
    }
}

void productOf(const Matrix& r, const Matrix& s, Matrix& out) {
  out.reset(r.rows() * s.rows(), r.cols() * s.cols());
  for (std::size_t i1 = 0; i1 < r.rows(); ++i1)
    for (std::size_t j1 = 0; j1 < r.cols(); ++j1) {
      if (!r.get(i1, j1)) continue;
      for (std::size_t i2 = 0; i2 < s.rows(); ++i2)
        for (std::size_t j2 = 0; j2 < s.cols(); ++j2)
          if (s.get(i2, j2)) out.set(i1 * s.rows() + i2, j1 * s.cols() + j2);
    }
}

void closure(const Matrix& a, Matrix& out) {
  if (a.rows() != a.cols()) throw std::logic_error("closure of a non-square matrix");
  out = a;
  std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) out.set(k, k);
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t* rk = out.row(k);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || !out.get(i, k)) continue;
      auto* ri = out.row(i);
      for (std::size_t w = 0; w < out.words(); ++w) ri[w] |= rk[w];
    }
  }
}

void firstProjection(std::size_t a, std::size_t b, Matrix& out) {
  out.reset(a, a * b);
  for (std::size_t x = 0; x < a; ++x)
    for (std::size_t y = 0; y < b; ++y) out.set(x, x * b + y);
}

void secondProjection(std::size_t a, std::size_t b, Matrix& out) {
  out.reset(b, a * b);
  for (std::size_t x = 0; x < a; ++x)
    for (std::size_t y = 0; y < b; ++y) out.set(y, x * b + y);
}

}  // namespace alloyfa::oracle
