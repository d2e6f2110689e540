#pragma once

// Fixed-precision text formatting shared by the serializers, the report
// writer and the CLI.  Everything prints with 15 significant digits so that
// identical configurations give byte-identical output.

#include <complex>
#include <string>

namespace qpath {

std::string fmt_g15(double v);

// "re" when the imaginary part is exactly zero, otherwise "re+imi"/"re-imi".
std::string fmt_complex(std::complex<double> v);

}  // namespace qpath
