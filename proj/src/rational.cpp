#include "flowcouple/rational.hpp"

#include <cctype>
#include <limits>

#include "flowcouple/error.hpp"

namespace flowcouple {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void reject(std::string_view text) {
  throw Error(ErrorKind::InvalidInput,
              "not a rational literal: \"" + std::string(text) + "\"");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

Rational parse_decimal(std::string_view body, std::string_view original) {
  std::string_view mantissa = body;
  long exponent = 0;
  if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = body.substr(0, e);
    std::string_view exp_text = body.substr(e + 1);
    bool negative_exp = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      negative_exp = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) reject(original);
    exponent = std::stol(std::string(exp_text));
    if (negative_exp) exponent = -exponent;
  }
  std::string_view int_part = mantissa;
  std::string_view frac_part;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    int_part = mantissa.substr(0, dot);
    frac_part = mantissa.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) reject(original);
  if (!int_part.empty() && !all_digits(int_part)) reject(original);
  if (!frac_part.empty() && !all_digits(frac_part)) reject(original);

  std::string digits = std::string(int_part) + std::string(frac_part);
  mpz_class numerator(digits.empty() ? "0" : digits, 10);
  exponent -= static_cast<long>(frac_part.size());
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational result;
  if (exponent >= 0) {
    result = Rational(numerator * scale);
  } else {
    result = Rational(numerator, scale);
  }
  result.canonicalize();
  return result;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) reject(text);

  Rational result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) reject(text);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in \"" + std::string(text) + "\"");
    result = Rational(mpz_class(std::string(num), 10), d);
    result.canonicalize();
  } else if (all_digits(s)) {
    result = Rational(mpz_class(std::string(s), 10));
  } else {
    result = parse_decimal(s, text);
  }
  if (negative) result = -result;
  return result;
}

std::string to_string(const Rational& value) { return value.get_str(); }

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::CyclicInput: return "CyclicInput";
    case ErrorKind::NotAPartialOrder: return "NotAPartialOrder";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::VertexMismatch: return "VertexMismatch";
    case ErrorKind::NotAPath: return "NotAPath";
    case ErrorKind::UnrepresentableField: return "UnrepresentableField";
    case ErrorKind::CyclicSupport: return "CyclicSupport";
    case ErrorKind::MissingPath: return "MissingPath";
    case ErrorKind::WeightMismatch: return "WeightMismatch";
    case ErrorKind::NegativeTarget: return "NegativeTarget";
    case ErrorKind::InsufficientMass: return "InsufficientMass";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotDominated: return "NotDominated";
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::NotASingleCycle: return "NotASingleCycle";
    case ErrorKind::WrongShape: return "WrongShape";
    case ErrorKind::NotStrictlyPositive: return "NotStrictlyPositive";
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::Unreachable: return "Unreachable";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::NotMinimalForm: return "NotMinimalForm";
    case ErrorKind::UnsummableBoundary: return "UnsummableBoundary";
    case ErrorKind::InconsistentInstance: return "InconsistentInstance";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace flowcouple
