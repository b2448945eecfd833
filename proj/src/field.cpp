#include "quivfix/field.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace quivfix {

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::fp(uint32_t p) {
  if (!is_prime(p) || p > 97) fail(Errc::ParseError, "F_p requires a prime p <= 97");
  return {FieldKind::Fp, p};
}

std::string FieldSpec::str() const {
  switch (kind) {
    case FieldKind::Fp: return "Fp:" + std::to_string(p);
    case FieldKind::Q: return "Q";
    case FieldKind::Qi: return "Qi";
  }
  return "?";
}

Scalar Scalar::zero(const FieldSpec& f) {
  Scalar s;
  s.field_ = f;
  return s;
}

Scalar Scalar::one(const FieldSpec& f) { return of_int(f, 1); }

Scalar Scalar::of_int(const FieldSpec& f, long long n) {
  Scalar s;
  s.field_ = f;
  if (f.kind == FieldKind::Fp) {
    long long r = n % (long long)f.p;
    if (r < 0) r += f.p;
    s.res_ = uint32_t(r);
  } else {
    s.re_ = Rat(n);
  }
  return s;
}

Scalar Scalar::fp(uint32_t p, uint64_t residue) {
  Scalar s;
  s.field_ = FieldSpec::fp(p);
  s.res_ = uint32_t(residue % p);
  return s;
}

Scalar Scalar::rational(Rat r) {
  Scalar s;
  s.field_ = FieldSpec::q();
  s.re_ = std::move(r);
  return s;
}

Scalar Scalar::gaussian(Rat re, Rat im) {
  Scalar s;
  s.field_ = FieldSpec::qi();
  s.re_ = std::move(re);
  s.im_ = std::move(im);
  return s;
}

void Scalar::check_same_field(const Scalar& o) const {
  if (field_ != o.field_) fail(Errc::FieldMismatch, field_.str() + " vs " + o.field_.str());
}

bool Scalar::is_zero() const {
  return field_.kind == FieldKind::Fp ? res_ == 0 : re_ == 0 && im_ == 0;
}

bool Scalar::is_one() const {
  return field_.kind == FieldKind::Fp ? res_ == 1 : re_ == 1 && im_ == 0;
}

Scalar Scalar::add(const Scalar& o) const {
  check_same_field(o);
  Scalar s = *this;
  if (field_.kind == FieldKind::Fp) {
    s.res_ = (res_ + o.res_) % field_.p;
  } else {
    s.re_ = re_ + o.re_;
    s.im_ = im_ + o.im_;
  }
  return s;
}

Scalar Scalar::sub(const Scalar& o) const { return add(o.neg()); }

Scalar Scalar::mul(const Scalar& o) const {
  check_same_field(o);
  Scalar s = *this;
  switch (field_.kind) {
    case FieldKind::Fp: s.res_ = uint32_t(uint64_t(res_) * o.res_ % field_.p); break;
    case FieldKind::Q: s.re_ = re_ * o.re_; break;
    case FieldKind::Qi:
      s.re_ = re_ * o.re_ - im_ * o.im_;
      s.im_ = re_ * o.im_ + im_ * o.re_;
      break;
  }
  return s;
}

Scalar Scalar::neg() const {
  Scalar s = *this;
  if (field_.kind == FieldKind::Fp) {
    s.res_ = res_ == 0 ? 0 : field_.p - res_;
  } else {
    s.re_ = -re_;
    s.im_ = -im_;
  }
  return s;
}

Scalar Scalar::inv() const {
  if (is_zero()) fail(Errc::DivisionByZero, "inverse of zero");
  Scalar s = *this;
  switch (field_.kind) {
    case FieldKind::Fp: {
      uint64_t base = res_, acc = 1;
      for (uint32_t e = field_.p - 2; e; e >>= 1) {
        if (e & 1) acc = acc * base % field_.p;
        base = base * base % field_.p;
      }
      s.res_ = uint32_t(acc);
      break;
    }
    case FieldKind::Q: s.re_ = 1 / re_; break;
    case FieldKind::Qi: {
      Rat n = re_ * re_ + im_ * im_;
      s.re_ = re_ / n;
      s.im_ = -im_ / n;
      break;
    }
  }
  return s;
}

Scalar Scalar::div(const Scalar& o) const { return mul(o.inv()); }

Scalar Scalar::conj() const {
  Scalar s = *this;
  if (field_.kind == FieldKind::Qi) s.im_ = -im_;
  return s;
}

Scalar Scalar::pow(long long e) const {
  Scalar base = e < 0 ? inv() : *this;
  unsigned long long k = e < 0 ? (unsigned long long)(-e) : (unsigned long long)e;
  Scalar acc = one(field_);
  while (k) {
    if (k & 1) acc = acc.mul(base);
    base = base.mul(base);
    k >>= 1;
  }
  return acc;
}

bool Scalar::operator==(const Scalar& o) const {
  if (field_ != o.field_) return false;
  return field_.kind == FieldKind::Fp ? res_ == o.res_ : re_ == o.re_ && im_ == o.im_;
}

std::strong_ordering Scalar::order(const Scalar& o) const {
  check_same_field(o);
  if (field_.kind == FieldKind::Fp) return res_ <=> o.res_;
  if (re_ != o.re_) return re_ < o.re_ ? std::strong_ordering::less : std::strong_ordering::greater;
  if (im_ != o.im_) return im_ < o.im_ ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

uint32_t Scalar::residue() const {
  if (field_.kind != FieldKind::Fp) fail(Errc::WrongField, "residue() on infinite field");
  return res_;
}

namespace {

std::string rat_str(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

Rat parse_rat(const std::string& raw) {
  std::string text = raw;
  if (!text.empty() && text[0] == '+') text = text.substr(1);
  try {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rat(Int(text));
    Int num(text.substr(0, slash)), den(text.substr(slash + 1));
    if (den == 0) fail(Errc::DivisionByZero, "zero denominator in " + text);
    return Rat(num, den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(Errc::ParseError, "bad rational: " + raw);
  }
}

}  // namespace

std::string Scalar::str() const {
  switch (field_.kind) {
    case FieldKind::Fp: return std::to_string(res_) + " mod " + std::to_string(field_.p);
    case FieldKind::Q: return rat_str(re_);
    case FieldKind::Qi: {
      if (im_ == 0) return rat_str(re_);
      std::string imag;
      if (im_ == 1)
        imag = "i";
      else if (im_ == -1)
        imag = "-i";
      else
        imag = rat_str(im_) + "i";
      if (re_ == 0) return imag;
      return rat_str(re_) + (im_ > 0 ? "+" : "") + imag;
    }
  }
  return "?";
}

Scalar Scalar::parse(const FieldSpec& f, const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (c != ' ') text += c;
  if (text.empty()) fail(Errc::ParseError, "empty scalar");
  if (f.kind == FieldKind::Fp) {
    std::string body = text;
    auto mod = raw.find(" mod ");
    if (mod != std::string::npos) {
      body = raw.substr(0, mod);
      if (std::stoul(raw.substr(mod + 5)) != f.p) fail(Errc::FieldMismatch, "modulus mismatch in " + raw);
    }
    try {
      long long v = std::stoll(body);
      return of_int(f, v);
    } catch (const std::exception&) {
      fail(Errc::ParseError, "bad residue: " + raw);
    }
  }
  if (f.kind == FieldKind::Q) return rational(parse_rat(text));

  // Q(i): [rat][(+|-)[rat]i] with either part optional.
  if (text.back() == 'i') {
    std::string body = text.substr(0, text.size() - 1);
    // Split at the last top-level +/- that separates real and imaginary parts.
    for (size_t k = body.size(); k-- > 1;) {
      if ((body[k] == '+' || body[k] == '-') && body[k - 1] != '/' && body[k - 1] != '+' &&
          body[k - 1] != '-' && k > 0) {
        std::string re = body.substr(0, k);
        std::string im = body.substr(k);
        if (im == "+") im = "1";
        if (im == "-") im = "-1";
        return gaussian(parse_rat(re), parse_rat(im));
      }
    }
    if (body.empty()) return gaussian(Rat(0), Rat(1));
    if (body == "-") return gaussian(Rat(0), Rat(-1));
    return gaussian(Rat(0), parse_rat(body));
  }
  return gaussian(parse_rat(text), Rat(0));
}

std::vector<Scalar> unit_group(const FieldSpec& f) {
  if (!f.finite()) fail(Errc::InfiniteField, "unit_group over " + f.str());
  std::vector<Scalar> units;
  units.reserve(f.p - 1);
  for (uint32_t r = 1; r < f.p; ++r) units.push_back(Scalar::fp(f.p, r));
  return units;
}

std::vector<Scalar> power_class_quotient(const FieldSpec& f, uint64_t n) {
  if (!f.finite()) fail(Errc::InfiniteField, "power_class_quotient over " + f.str());
  if (n == 0) fail(Errc::ParseError, "power_class_quotient needs n >= 1");
  std::set<uint32_t> powers;
  for (uint32_t r = 1; r < f.p; ++r) powers.insert(Scalar::fp(f.p, r).pow((long long)n).residue());
  std::vector<char> covered(f.p, 0);
  std::vector<Scalar> reps;
  for (uint32_t r = 1; r < f.p; ++r) {
    if (covered[r]) continue;
    reps.push_back(Scalar::fp(f.p, r));
    for (uint32_t q : powers) covered[uint64_t(q) * r % f.p] = 1;
  }
  return reps;
}

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::InfiniteField: return "InfiniteField";
    case Errc::DanglingArrow: return "DanglingArrow";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::ContravariantElement: return "ContravariantElement";
    case Errc::IncompatibleData: return "IncompatibleData";
    case Errc::IncompatibleDim: return "IncompatibleDim";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NotAModifyingFamily: return "NotAModifyingFamily";
    case Errc::NotInDelta: return "NotInDelta";
    case Errc::CocycleMismatch: return "CocycleMismatch";
    case Errc::NotFixed: return "NotFixed";
    case Errc::NotRegularlyStable: return "NotRegularlyStable";
    case Errc::RelationFailure: return "RelationFailure";
    case Errc::IsSemistable: return "IsSemistable";
    case Errc::TieBreakViolation: return "TieBreakViolation";
    case Errc::NoModifyingFamilyForClass: return "NoModifyingFamilyForClass";
    case Errc::WrongField: return "WrongField";
    case Errc::NotStarAutomorphism: return "NotStarAutomorphism";
    case Errc::NotInvolution: return "NotInvolution";
    case Errc::NotInFiber: return "NotInFiber";
    case Errc::NotStable: return "NotStable";
    case Errc::Mismatch: return "Mismatch";
    case Errc::ZeroDimension: return "ZeroDimension";
    case Errc::ParseError: return "ParseError";
    case Errc::Unsupported: return "Unsupported";
  }
  return "Error";
}

}  // namespace quivfix
