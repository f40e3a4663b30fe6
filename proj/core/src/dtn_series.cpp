#include <stdexcept>

#include "gravwave/dtn.hpp"
#include "gravwave/spectral.hpp"

namespace gravwave {
namespace {

SpectralField band(const RealField& f, double rule) { return truncate(transform(f), rule); }

SpectralField abs_grad(const SpectralField& F) { return apply_symbol(F, symbols::abs_grad()); }
SpectralField lap(const SpectralField& F) { return apply_symbol(F, symbols::laplacian()); }
SpectralField d(const SpectralField& F, int axis) { return apply_symbol(F, symbols::partial(axis)); }

// Product of band-limited factors, cut back to the band.
SpectralField mul(const RealField& a, const RealField& b, double rule) {
  return truncate(transform(a * b), rule);
}

}  // namespace

RealField dtn_order0(const RealField& phi) { return apply_symbol(phi, symbols::abs_grad()); }

RealField dtn_order1(const RealField& h, const RealField& phi) {
  constexpr double r = kQuadraticRule;
  const SpectralField P = band(phi, r);
  const RealField hb = inverse(band(h, r));
  SpectralField out = abs_grad(mul(hb, inverse(abs_grad(P)), r));
  out += d(mul(hb, inverse(d(P, 0)), r), 0);
  out += d(mul(hb, inverse(d(P, 1)), r), 1);
  return inverse(-out);
}

RealField b2(const RealField& h, const RealField& phi) {
  constexpr double r = kQuadraticRule;
  const SpectralField P = band(phi, r);
  const RealField hb = inverse(band(h, r));
  SpectralField out = abs_grad(mul(hb, inverse(abs_grad(P)), r));
  out += mul(hb, inverse(lap(P)), r);
  return inverse(-out);
}

namespace {

// The cubic terms shared by b3_cubic, dtn_order2 and n3_explicit. Factors
// are cut to |m| < n/4, so no triple product aliases into that band.
struct CubicParts {
  SpectralField nested;   // |grad|(h|grad|(h|grad|phi))
  SpectralField sym;      // (Lap(h^2|grad|phi) + |grad|(h^2 Lap phi)) / 2
  SpectralField slope;    // |grad h|^2 |grad| phi
};

CubicParts cubic_parts(const RealField& h, const RealField& phi) {
  constexpr double r = kCubicRule;
  const SpectralField H = band(h, r);
  const SpectralField P = band(phi, r);
  const RealField hb = inverse(H);
  const RealField ap = inverse(abs_grad(P));
  const RealField h2 = hb * hb;
  const RealField inner = inverse(abs_grad(transform(hb * ap)));
  CubicParts c{abs_grad(mul(hb, inner, r)),
               lap(mul(h2, ap, r)) + abs_grad(mul(h2, inverse(lap(P)), r)),
               SpectralField(h.grid())};
  c.sym *= 0.5;
  const RealField h1 = inverse(d(H, 0));
  const RealField h2d = inverse(d(H, 1));
  c.slope = mul(h1 * h1 + h2d * h2d, ap, r);
  return c;
}

}  // namespace

RealField b3_cubic(const RealField& h, const RealField& phi) {
  const CubicParts c = cubic_parts(h, phi);
  return inverse(c.nested + c.sym - c.slope);
}

RealField dtn_order2(const RealField& h, const RealField& phi) {
  const CubicParts c = cubic_parts(h, phi);
  return inverse(c.nested + c.sym);
}

ComplexField n3_explicit(const RealField& h, const RealField& phi) {
  constexpr double r = kCubicRule;
  const CubicParts c = cubic_parts(h, phi);
  const SpectralField H = band(h, r);
  const SpectralField P = band(phi, r);
  const RealField hb = inverse(H);
  const RealField ap = inverse(abs_grad(P));
  // |grad|(h|grad|phi) + h Lap phi, whose product with |grad|phi is cubic.
  const RealField q = inverse(abs_grad(transform(hb * ap))) + hb * inverse(lap(P));
  const SpectralField prod = apply_symbol(mul(ap, q, r), symbols::half_grad());
  SpectralField out = c.nested + c.sym;
  out += complex(0.0, -1.0) * prod;
  return inverse_complex(out);
}

RealField dtn_series(const RealField& h, const RealField& phi, int order) {
  if (order < 0 || order > 2) throw std::invalid_argument("dtn_series: order must be 0, 1 or 2");
  RealField out = dtn_order0(phi);
  if (order >= 1) out += dtn_order1(h, phi);
  if (order >= 2) out += dtn_order2(h, phi);
  return out;
}

}  // namespace gravwave
