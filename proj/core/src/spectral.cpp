#include "gravwave/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "fft.hpp"

namespace gravwave {

SpectralField transform(const RealField& f) {
  const Grid& g = f.grid();
  const int n = g.n();
  const int half = n / 2 + 1;
  std::vector<complex> packed(static_cast<std::size_t>(n) * half);
  detail::rfft2(f.data(), packed.data(), n);
  SpectralField out(g);
  const double w = g.cell_area();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < half; ++j) {
      const complex c = w * packed[static_cast<std::size_t>(i) * half + j];
      out(i, j) = c;
      out((n - i) % n, (n - j) % n) = std::conj(c);
    }
  }
  return out;
}

SpectralField transform(const ComplexField& f) {
  const Grid& g = f.grid();
  std::vector<complex> buf(f.values().begin(), f.values().end());
  detail::fft2(buf.data(), g.n(), -1);
  const double w = g.cell_area();
  for (auto& c : buf) c *= w;
  return SpectralField(g, std::move(buf));
}

ComplexField inverse_complex(const SpectralField& F) {
  const Grid& g = F.grid();
  std::vector<complex> buf(F.values().begin(), F.values().end());
  detail::fft2(buf.data(), g.n(), +1);
  const double w = 1.0 / (g.period() * g.period());
  for (auto& c : buf) c *= w;
  return ComplexField(g, std::move(buf));
}

RealField inverse(const SpectralField& F) { return real_part(inverse_complex(F)); }

namespace symbols {

Symbol abs_grad() {
  return {[](double a, double b) { return complex(std::hypot(a, b)); }, "|grad|"};
}

Symbol half_grad() {
  return {[](double a, double b) { return complex(std::sqrt(std::hypot(a, b))); }, "Lambda"};
}

Symbol abs_grad_pow(double s) {
  Symbol sym{[s](double a, double b) {
               const double r = std::hypot(a, b);
               return r == 0.0 ? complex(0.0) : complex(std::pow(r, s));
             },
             "|grad|^s"};
  sym.singular_at_zero = s < 0.0;
  return sym;
}

Symbol bessel_pow(double s) {
  return {[s](double a, double b) { return complex(std::pow(1.0 + a * a + b * b, 0.5 * s)); },
          "<grad>^s"};
}

Symbol partial(int axis) {
  if (axis != 0 && axis != 1) throw std::invalid_argument("partial: axis must be 0 or 1");
  Symbol sym{[axis](double a, double b) { return complex(0.0, axis == 0 ? a : b); }, "d"};
  sym.odd = true;
  return sym;
}

Symbol laplacian() {
  return {[](double a, double b) { return complex(-(a * a + b * b)); }, "Laplacian"};
}

Symbol poisson(double y, double lambda) {
  return {[y, lambda](double a, double b) {
            return complex(std::exp(y * lambda * std::hypot(a, b)));
          },
          "e^{y|grad|}"};
}

Symbol half_wave(double t, int sign) {
  const double sg = sign < 0 ? -1.0 : 1.0;
  return {[t, sg](double a, double b) {
            return std::polar(1.0, sg * t * std::sqrt(std::hypot(a, b)));
          },
          "e^{itLambda}"};
}

}  // namespace symbols

SpectralField apply_symbol(const SpectralField& F, const Symbol& symbol) {
  const Grid& g = F.grid();
  const int n = g.n();
  if (symbol.singular_at_zero) {
    double scale = 0.0;
    for (const complex& c : F.values()) scale = std::max(scale, std::abs(c));
    if (std::abs(F(0, 0)) > 1e-12 * scale) {
      throw IllPosedSymbol("negative power of |grad| applied to a field with nonzero mean");
    }
  }
  SpectralField out(g);
  for (int i = 0; i < n; ++i) {
    const double a = g.freq(i);
    for (int j = 0; j < n; ++j) {
      if (symbol.odd && (g.is_nyquist(i) || g.is_nyquist(j))) continue;
      if (symbol.singular_at_zero && i == 0 && j == 0) continue;
      out(i, j) = symbol.eval(a, g.freq(j)) * F(i, j);
    }
  }
  return out;
}

RealField apply_symbol(const RealField& f, const Symbol& symbol) {
  return inverse(apply_symbol(transform(f), symbol));
}

SpectralField truncate(const SpectralField& F, double fraction) {
  const Grid& g = F.grid();
  const int n = g.n();
  const double cut = fraction * (n / 2);
  SpectralField out(g);
  for (int i = 0; i < n; ++i) {
    const int mi = g.mode(i);
    if (g.is_nyquist(i) || std::abs(mi) >= cut) continue;
    for (int j = 0; j < n; ++j) {
      const int mj = g.mode(j);
      if (g.is_nyquist(j) || std::abs(mj) >= cut) continue;
      out(i, j) = F(i, j);
    }
  }
  return out;
}

RealField truncate(const RealField& f, double fraction) {
  return inverse(truncate(transform(f), fraction));
}

RealField dealiased_product(const RealField& a, const RealField& b) {
  const RealField at = truncate(a, kQuadraticRule);
  const RealField bt = truncate(b, kQuadraticRule);
  return truncate(at * bt, kQuadraticRule);
}

Gradient gradient(const RealField& f) {
  const SpectralField F = transform(f);
  return {inverse(apply_symbol(F, symbols::partial(0))),
          inverse(apply_symbol(F, symbols::partial(1)))};
}

RealField divergence(const RealField& v1, const RealField& v2) {
  SpectralField d = apply_symbol(transform(v1), symbols::partial(0));
  d += apply_symbol(transform(v2), symbols::partial(1));
  return inverse(d);
}

SpectralField conj_reflect(const SpectralField& F) {
  const Grid& g = F.grid();
  SpectralField out(g);
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) out[g.reflected(i, j)] = std::conj(F(i, j));
  return out;
}

double hermitian_defect(const SpectralField& F) {
  const Grid& g = F.grid();
  double scale = 0.0, defect = 0.0;
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.n(); ++j) {
      scale = std::max(scale, std::abs(F(i, j)));
      defect = std::max(defect, std::abs(std::conj(F[g.reflected(i, j)]) - F(i, j)));
    }
  }
  return scale == 0.0 ? 0.0 : defect / scale;
}

}  // namespace gravwave
