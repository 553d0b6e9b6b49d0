#include "rotlaw/circle.hpp"

#include <cmath>
#include <sstream>

#include "rotlaw/errors.hpp"

namespace rotlaw {

double AlphaNumber::to_double(const Angle& angle) const {
  if (rot == 0) return rat.get_d();
  return enclose(angle, Rational(1, Integer(1) << 64)).mid().get_d();
}

RationalInterval AlphaNumber::enclose(const Angle& angle, const Rational& width) const {
  return angle.enclose_linear(rat, rot, width);
}

std::string AlphaNumber::to_string() const {
  std::ostringstream os;
  if (rat != 0 || rot == 0) os << rat.get_str();
  if (rot != 0) {
    if (rat != 0 && rot > 0) os << '+';
    os << rot.get_str() << "*alpha";
  }
  return os.str();
}

int sign(const Angle& angle, const AlphaNumber& x) { return angle.sign_linear(x.rat, x.rot); }

int compare_numbers(const Angle& angle, const AlphaNumber& x, const AlphaNumber& y) {
  return angle.sign_linear(x.rat - y.rat, x.rot - y.rot);
}

CirclePoint canonical(const Angle& angle, const CirclePoint& x) {
  const double v = x.rat.get_d() + x.rot.get_d() * angle.approx();
  Integer fl = std::isfinite(v) ? Integer(std::floor(v)) : floor(x.rat);
  for (;;) {
    const Rational shifted = x.rat - fl;
    if (angle.sign_linear(shifted, x.rot) < 0) {
      --fl;
    } else if (angle.sign_linear(Rational(shifted - 1), x.rot) >= 0) {
      ++fl;
    } else {
      return {shifted, x.rot};
    }
  }
}

double approx(const Angle& angle, const CirclePoint& x) {
  const double v = x.rat.get_d() + x.rot.get_d() * angle.approx();
  double f = v - std::floor(v);
  return f >= 1.0 ? 0.0 : f;
}

bool same_point(const CirclePoint& x, const CirclePoint& y) {
  if (x.rot != y.rot) return false;
  const Rational d = x.rat - y.rat;
  return d.get_den() == 1;
}

Order compare(const Angle& angle, const CirclePoint& x, const CirclePoint& y) {
  if (same_point(x, y)) return Order::EQ;
  const CirclePoint cx = canonical(angle, x), cy = canonical(angle, y);
  const int s = angle.sign_linear(cx.rat - cy.rat, cx.rot - cy.rot);
  return s < 0 ? Order::LT : (s > 0 ? Order::GT : Order::EQ);
}

CirclePoint rotate(const Angle& angle, const CirclePoint& x, long long steps) {
  return canonical(angle, CirclePoint(x.rat, x.rot + static_cast<long>(steps)));
}

std::optional<long long> orbit_offset(const CirclePoint& x, const CirclePoint& y) {
  const Rational drot = y.rot - x.rot;
  const Rational drat = y.rat - x.rat;
  if (drot.get_den() != 1 || drat.get_den() != 1) return std::nullopt;
  if (!drot.get_num().fits_slong_p()) throw LabError(ErrorKind::InvalidInput, "orbit offset exceeds 64-bit range");
  return drot.get_num().get_si();
}

AlphaNumber forward_length(const Angle& angle, const CirclePoint& u, const CirclePoint& v) {
  if (same_point(u, v)) return {Rational(1), Rational(0)};
  const CirclePoint d = canonical(angle, CirclePoint(v.rat - u.rat, v.rot - u.rot));
  return d.as_number();
}

}  // namespace rotlaw
