#include <pybind11/pybind11.h>
PYBIND11_MODULE(gplane, m) { m.doc() = "placeholder"; }
