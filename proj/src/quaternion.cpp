#include "quatpick/quaternion.hpp"

#include <ostream>

namespace quatpick {

bool same_sphere(const Quaternion& p, const Quaternion& q, double tol) {
  return std::abs(re(p) - re(q)) <= tol && std::abs(abs_im(p) - abs_im(q)) <= tol;
}

Quaternion similarity(const Quaternion& h, const Quaternion& p) {
  if (norm2(h) == 0.0) throw DomainError("similarity by zero quaternion");
  // Real part is central; rotate only the imaginary part to keep Re exact.
  const Quaternion rotated = inv(h) * im(p) * h;
  return {p.w, rotated.x, rotated.y, rotated.z};
}

ImagUnit::ImagUnit(const Quaternion& q) {
  const double m = abs_im(q);
  if (m == 0.0) throw DomainError("imaginary unit from a real quaternion");
  if (std::abs(q.w) > 1e-12 * (1.0 + m)) throw DomainError("imaginary unit with nonzero real part");
  unit_ = {0.0, q.x / m, q.y / m, q.z / m};
}

ImagUnit slice_unit(const Quaternion& p) {
  if (abs_im(p) == 0.0) return ImagUnit(Quaternion::i());
  return ImagUnit(im(p));
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '[' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ']';
}

}  // namespace quatpick
