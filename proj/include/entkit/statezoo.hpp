#pragma once

#include "entkit/qcore.hpp"

#include <map>
#include <string>

namespace entkit {

// key=value parameters as written in a state spec, e.g. "werner:F=0.75"
using ParamMap = std::map<std::string, double>;

namespace zoo {

// Bell index: 1 = (|00>+|11>)/sqrt2, 2 = (|00>-|11>)/sqrt2,
//             3 = (|01>+|10>)/sqrt2, 4 = (|01>-|10>)/sqrt2
Vec bell_vector(int k);
PureState bell(int k);

PureState ghz3();
PureState ghz4();
PureState ghz_class(int i);  // G1..G7
PureState w3_prototype();
PureState w3_nonprototype();
PureState w4_prototype();
PureState pati(double l);
PureState liqiu_w(int n);
PureState qutrit_ghz3();
PureState generalized_max_entangled(int n);

DensityMatrix werner(double F);
DensityMatrix mjwk(double C);
double mjwk_h(double C);
DensityMatrix wei(double x, double y, double a, double b, double gamma);
DensityMatrix werner_derivative(double F, double a);
DensityMatrix nmems(double p);
DensityMatrix ih_mems(double p1, double p2, double p3, double p4);
// Werner-like mixture produced by cloning both halves of sqrt(l1)|00>+sqrt(1-l1)|11>
DensityMatrix cloned_mems(double c2, double lambda1 = 0.5);

DensityMatrix nmems_from_reductions(double p);

// dispatchers used by the CLI and the Python layer
DensityMatrix make_mixed(const std::string& family, const ParamMap& params);
PureState make_pure(const std::string& family, const ParamMap& params);
bool is_pure_family(const std::string& family);
bool is_mixed_family(const std::string& family);

}  // namespace zoo
}  // namespace entkit
