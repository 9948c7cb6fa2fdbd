// Recovers SK^1..SK^6 over GF(9) from the weight distribution of C(DC1+(2,9)) and compares
// them with direct summation.

#include <iostream>

#include "kloos/kloos.hpp"

int main() {
  using namespace kloos;
  KloostermanTable table(Field::build(2));
  const CosetFamily family = CosetFamily::parse("DC1+");

  const MomentSeries series = sk_via_pless(family, 2, table, 6);
  int status = 0;
  for (unsigned h = 1; h <= 6; ++h) {
    const BigInt direct = sk_moment(table, series.exponent(h));
    std::cout << "SK^" << series.exponent(h) << " = " << series.values[h - 1] << "  (direct " << direct << ")\n";
    if (direct != series.values[h - 1]) status = 1;
  }
  return status;
}
