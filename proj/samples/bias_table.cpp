// Exact bias and MSE of the record-based plug-in density estimate as the
// number of records grows.

#include <cstdio>

#include "lomax_records/lomax_records.hpp"

int main() {
  using namespace lomax_records;
  const LomaxParams p(1.0);
  const double x = 0.5;
  const double f = pdf(x, p);
  std::printf("theta = 1, x = %g, f(x) = %.6f\n\n", x, f);
  std::printf("%5s %12s %12s %12s %8s\n", "m", "E[pdf_hat]", "bias", "MSE", "flagged");
  for (int m : {3, 5, 10, 20, 40, 80, 160, 320}) {
    const SeriesResult mean = expected_pdf_hat(x, p, m);
    const SeriesResult mse = mse_pdf_hat(x, p, m);
    std::printf("%5d %12.8f %12.3e %12.3e %8s\n", m, mean.value, mean.value - f, mse.value,
                mean.cancellation_flag || mse.cancellation_flag ? "yes" : "no");
  }
}
