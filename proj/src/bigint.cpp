#include "pzeta/bigint.hpp"

#include "pzeta/error.hpp"

namespace pzeta {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotALattice: return "NotALattice";
    case ErrorCode::NoBoundedStructure: return "NoBoundedStructure";
    case ErrorCode::DegenerateLattice: return "DegenerateLattice";
    case ErrorCode::CyclicCovers: return "CyclicCovers";
    case ErrorCode::InvalidElement: return "InvalidElement";
    case ErrorCode::NotComparable: return "NotComparable";
    case ErrorCode::BottomHasNoIrreducibles: return "BottomHasNoIrreducibles";
    case ErrorCode::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::MismatchDetected: return "MismatchDetected";
    case ErrorCode::NotAPrimePower: return "NotAPrimePower";
    case ErrorCode::SingularInput: return "SingularInput";
    case ErrorCode::PartNotDivisible: return "PartNotDivisible";
    case ErrorCode::OrderLimitExceeded: return "OrderLimitExceeded";
    case ErrorCode::NotCoprimeOrders: return "NotCoprimeOrders";
    case ErrorCode::NotAGroup: return "NotAGroup";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UsageError: return "UsageError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

BigInt pow(const BigInt& base, unsigned long exp) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

Rational pow(const Rational& base, long exp) {
  if (exp < 0) {
    if (base == 0) fail(ErrorCode::SingularInput, "zero raised to a negative power");
    Rational inv(base.get_den(), base.get_num());
    inv.canonicalize();
    return pow(inv, -exp);
  }
  const auto e = static_cast<unsigned long>(exp);
  Rational out(pow(BigInt(base.get_num()), e), pow(BigInt(base.get_den()), e));
  out.canonicalize();
  return out;
}

BigInt factorial(unsigned long n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

BigInt binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(BigInt(text));
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + text + "'");
    return make_rational(num, den);
  } catch (const std::invalid_argument&) {
    fail(ErrorCode::ParseError, "not a rational: '" + text + "'");
  }
}

}  // namespace pzeta
