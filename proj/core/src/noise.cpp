#include <cmath>

#include "roughimg/experiment.hpp"

namespace roughimg {

double NormalStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double NormalStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log1p(-u1));
  const double angle = 2.0 * pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

namespace {

void perturb(Eigen::MatrixXcd& m, double delta, NormalStream& stream) {
  const double scale = delta * m.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double z1 = stream.next();
      const double z2 = stream.next();
      m(i, j) += scale * Complex(z1, z2);
    }
  }
}

}  // namespace

CauchyDataSet add_noise(const CauchyDataSet& data, double delta, std::uint64_t seed) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw DomainError("add_noise: delta must be >= 0");
  CauchyDataSet out = data;
  out.noise_delta = delta;
  out.seed = seed;
  if (delta == 0.0) return out;
  NormalStream stream(seed);
  perturb(out.us, delta, stream);
  perturb(out.dnus, delta, stream);
  return out;
}

}  // namespace roughimg
