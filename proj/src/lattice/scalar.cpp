#include "mhs/lattice/scalar.hpp"

#include <cmath>
#include <sstream>

#include "mhs/error.hpp"

namespace mhs::lattice {

std::string to_string(BackendKind kind) {
  return kind == BackendKind::exact ? "exact" : "float";
}

namespace {

[[noreturn]] void mismatch() {
  throw Error(ErrorKind::backend_mismatch, "scalar backend mismatch (exact vs float)");
}

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorKind::schema, "empty rational literal");
  if (s.front() == '+') s.erase(0, 1);
  mpq_class q;
  if (q.set_str(s, 10) != 0) {
    throw Error(ErrorKind::schema, "malformed rational literal '" + std::string(text) + "'");
  }
  if (q.get_den() == 0) throw Error(ErrorKind::schema, "zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

std::string rational_string(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace

Scalar Scalar::exact(const mpq_class& re, const mpq_class& im) {
  Gaussian g{re, im};
  g.re.canonicalize();
  g.im.canonicalize();
  return Scalar(std::move(g));
}

Scalar Scalar::integer(long n, BackendKind kind) {
  if (kind == BackendKind::exact) return Scalar(Gaussian{mpq_class(n), mpq_class(0)});
  return Scalar(std::complex<double>(static_cast<double>(n), 0.0));
}

const mpq_class& Scalar::re_q() const {
  if (auto g = std::get_if<Gaussian>(&value_)) return g->re;
  throw Error(ErrorKind::backend_mismatch, "exact component requested from float scalar");
}

const mpq_class& Scalar::im_q() const {
  if (auto g = std::get_if<Gaussian>(&value_)) return g->im;
  throw Error(ErrorKind::backend_mismatch, "exact component requested from float scalar");
}

std::complex<double> Scalar::to_complex() const {
  if (auto g = std::get_if<Gaussian>(&value_)) return {g->re.get_d(), g->im.get_d()};
  return std::get<std::complex<double>>(value_);
}

Scalar Scalar::conj() const {
  if (auto g = std::get_if<Gaussian>(&value_)) return Scalar(Gaussian{g->re, -g->im});
  return Scalar(std::conj(std::get<std::complex<double>>(value_)));
}

Scalar Scalar::real_part() const {
  if (auto g = std::get_if<Gaussian>(&value_)) return Scalar(Gaussian{g->re, 0});
  return Scalar(std::complex<double>(std::get<std::complex<double>>(value_).real(), 0.0));
}

Scalar Scalar::imag_part() const {
  if (auto g = std::get_if<Gaussian>(&value_)) return Scalar(Gaussian{g->im, 0});
  return Scalar(std::complex<double>(std::get<std::complex<double>>(value_).imag(), 0.0));
}

double Scalar::abs() const { return std::abs(to_complex()); }

bool Scalar::is_zero() const {
  if (auto g = std::get_if<Gaussian>(&value_)) return sgn(g->re) == 0 && sgn(g->im) == 0;
  return std::get<std::complex<double>>(value_) == std::complex<double>(0.0, 0.0);
}

bool Scalar::is_real() const {
  if (auto g = std::get_if<Gaussian>(&value_)) return sgn(g->im) == 0;
  return std::get<std::complex<double>>(value_).imag() == 0.0;
}

bool Scalar::is_integer() const {
  if (auto g = std::get_if<Gaussian>(&value_)) return sgn(g->im) == 0 && g->re.get_den() == 1;
  return false;
}

Scalar Scalar::operator-() const {
  if (auto g = std::get_if<Gaussian>(&value_)) return Scalar(Gaussian{-g->re, -g->im});
  return Scalar(-std::get<std::complex<double>>(value_));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (backend() != o.backend()) mismatch();
  if (auto g = std::get_if<Gaussian>(&value_)) {
    const auto& h = std::get<Gaussian>(o.value_);
    g->re += h.re;
    g->im += h.im;
  } else {
    std::get<std::complex<double>>(value_) += std::get<std::complex<double>>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (backend() != o.backend()) mismatch();
  if (auto g = std::get_if<Gaussian>(&value_)) {
    const auto& h = std::get<Gaussian>(o.value_);
    g->re -= h.re;
    g->im -= h.im;
  } else {
    std::get<std::complex<double>>(value_) -= std::get<std::complex<double>>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (backend() != o.backend()) mismatch();
  if (auto g = std::get_if<Gaussian>(&value_)) {
    const auto& h = std::get<Gaussian>(o.value_);
    if (sgn(g->im) == 0 && sgn(h.im) == 0) {
      g->re *= h.re;
      return *this;
    }
    mpq_class re = g->re * h.re - g->im * h.im;
    mpq_class im = g->re * h.im + g->im * h.re;
    g->re = std::move(re);
    g->im = std::move(im);
  } else {
    std::get<std::complex<double>>(value_) *= std::get<std::complex<double>>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (backend() != o.backend()) mismatch();
  if (o.is_zero()) throw Error(ErrorKind::singular, "division by zero scalar");
  if (auto g = std::get_if<Gaussian>(&value_)) {
    const auto& h = std::get<Gaussian>(o.value_);
    if (sgn(h.im) == 0) {
      g->re /= h.re;
      g->im /= h.re;
      return *this;
    }
    mpq_class norm = h.re * h.re + h.im * h.im;
    mpq_class re = (g->re * h.re + g->im * h.im) / norm;
    mpq_class im = (g->im * h.re - g->re * h.im) / norm;
    g->re = std::move(re);
    g->im = std::move(im);
  } else {
    std::get<std::complex<double>>(value_) /= std::get<std::complex<double>>(o.value_);
  }
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.backend() != b.backend()) return false;
  if (auto g = std::get_if<Gaussian>(&a.value_)) {
    const auto& h = std::get<Gaussian>(b.value_);
    return g->re == h.re && g->im == h.im;
  }
  return std::get<std::complex<double>>(a.value_) == std::get<std::complex<double>>(b.value_);
}

std::string Scalar::to_string() const {
  if (auto g = std::get_if<Gaussian>(&value_)) {
    std::string out = rational_string(g->re);
    if (sgn(g->im) != 0) {
      out += sgn(g->im) > 0 ? "+" : "-";
      out += rational_string(mpq_class(::abs(g->im))) + "*i";
    }
    return out;
  }
  std::ostringstream os;
  os.precision(17);
  os << std::get<std::complex<double>>(value_);
  return os.str();
}

Scalar Scalar::parse_exact(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s.push_back(c);
  }
  if (s.empty()) throw Error(ErrorKind::schema, "empty scalar literal");
  if (s.back() != 'i') return exact(parse_rational(s), 0);

  s.pop_back();
  if (!s.empty() && s.back() == '*') s.pop_back();
  // split "re+im" at the last sign that is not in leading position
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e') {
      split = k;
      break;
    }
  }
  std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  mpq_class im;
  if (im_part.empty() || im_part == "+") {
    im = 1;
  } else if (im_part == "-") {
    im = -1;
  } else {
    im = parse_rational(im_part);
  }
  mpq_class re = re_part.empty() ? mpq_class(0) : parse_rational(re_part);
  return exact(re, im);
}

}  // namespace mhs::lattice
