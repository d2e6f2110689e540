#include "qpath/format.hpp"

#include <cstdio>

namespace qpath {

std::string fmt_g15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v == 0.0 ? 0.0 : v);  // normalize -0
  return buf;
}

std::string fmt_complex(std::complex<double> v) {
  if (v.imag() == 0.0) return fmt_g15(v.real());
  std::string s = fmt_g15(v.real());
  s += (v.imag() < 0.0) ? "-" : "+";
  s += fmt_g15(v.imag() < 0.0 ? -v.imag() : v.imag());
  s += "i";
  return s;
}

}  // namespace qpath
