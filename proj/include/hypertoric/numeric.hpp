#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace hypertoric {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold for the input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (spec files, rational literals).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Dense row-major matrix over an exact ring.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  template <typename U>
  Matrix(std::initializer_list<std::initializer_list<U>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
      for (const auto& v : row) data_.emplace_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw std::invalid_argument("row length mismatch");
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }

  [[nodiscard]] std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  [[nodiscard]] std::vector<std::vector<T>> row_list() const {
    std::vector<std::vector<T>> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
    return out;
  }

  [[nodiscard]] Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  /// Submatrix keeping the listed columns, in the given order.
  [[nodiscard]] Matrix select_columns(const std::vector<std::size_t>& keep) const {
    Matrix out(rows_, keep.size());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t k = 0; k < keep.size(); ++k) out(r, k) = (*this)(r, keep[k]);
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }

  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const T& factor) {
    if (factor == 0) return;
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(src, c) != 0) (*this)(dst, c) += factor * (*this)(src, c);
  }

  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const T& factor) {
    if (factor == 0) return;
    for (std::size_t r = 0; r < rows_; ++r)
      if ((*this)(r, src) != 0) (*this)(r, dst) += factor * (*this)(r, src);
  }

  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix dimension mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
    std::vector<T> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  [[nodiscard]] bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& v) { return v == 0; });
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Rational(m(r, c));
  return out;
}

inline RatVector to_rational(const IntVector& v) { return RatVector(v.begin(), v.end()); }

template <typename A, typename B>
auto dot(const std::vector<A>& a, const std::vector<B>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  using R = std::conditional_t<std::is_same_v<A, Rational> || std::is_same_v<B, Rational>, Rational, A>;
  R sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += R(a[i]) * R(b[i]);
  return sum;
}

inline int sign(const Integer& v) { return v.sign(); }
inline int sign(const Rational& v) { return v.sign(); }

inline Integer gcd_of(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
  return g;
}

/// Clears denominators and divides by the content; the result is a primitive
/// integer vector on the same positive ray (zero stays zero).
inline IntVector primitive_integer(const RatVector& v) {
  Integer l = 1;
  for (const auto& x : v) l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(x)));
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = boost::multiprecision::numerator(v[i]) * (l / boost::multiprecision::denominator(v[i]));
  const Integer g = gcd_of(out);
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

inline std::string to_string(const Integer& v) { return v.str(); }

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& v) {
  const Integer& den = boost::multiprecision::denominator(v);
  if (den == 1) return boost::multiprecision::numerator(v).str();
  return boost::multiprecision::numerator(v).str() + "/" + den.str();
}

namespace detail {

inline std::string normalize_minus(std::string_view text) {
  // U+2212 MINUS SIGN is accepted as '-'.
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 && static_cast<unsigned char>(text[i + 2]) == 0x92) {
      out.push_back('-');
      i += 2;
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}

inline bool is_integer_literal(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

// GMP reads a leading 0 as an octal prefix, so zeros are stripped first.
inline Integer decimal_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  while (s.size() > 1 && s[0] == '0') s.remove_prefix(1);
  const Integer v{std::string(s)};
  return negative ? Integer(-v) : v;
}

}  // namespace detail

/// Parses "p", "p/q" or a finite decimal "x.y" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  std::string s = detail::normalize_minus(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t'; }), s.end());
  if (s.empty()) throw ParseError("empty rational literal");
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (s.find('+') != std::string::npos && s[0] != '+') throw ParseError("malformed rational '" + std::string(text) + "'");
    if (!detail::is_integer_literal(num) || !detail::is_integer_literal(den) || den[0] == '-' || den[0] == '+')
      throw ParseError("malformed rational '" + std::string(text) + "'");
    const Integer d = detail::decimal_integer(den);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(detail::decimal_integer(num), d);
  }
  if (const auto dotpos = s.find('.'); dotpos != std::string::npos) {
    std::string whole = s.substr(0, dotpos), frac = s.substr(dotpos + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.erase(0, 1);
    if (whole.empty()) whole = "0";
    if (!detail::is_integer_literal(whole) || whole[0] == '-' || whole[0] == '+' ||
        (!frac.empty() && !detail::is_integer_literal(frac)) || (!frac.empty() && (frac[0] == '-' || frac[0] == '+')))
      throw ParseError("malformed rational '" + std::string(text) + "'");
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational value(detail::decimal_integer(whole + frac), scale);
    return negative ? Rational(-value) : value;
  }
  if (!detail::is_integer_literal(s)) throw ParseError("malformed rational '" + std::string(text) + "'");
  return Rational(detail::decimal_integer(s));
}

template <typename T>
std::string format_vector(const std::vector<T>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << to_string(v[i]);
  os << ')';
  return os.str();
}

}  // namespace hypertoric
