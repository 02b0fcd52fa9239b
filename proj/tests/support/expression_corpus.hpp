#pragma once

// Expression strings covering every grammar production; used for print/parse round-trips.

#include <string>
#include <vector>

namespace corpus {

inline const std::vector<std::string> expressions = {
    "x*y",
    "sin(x)*sin(y) + x^2",
    "x^2*y^2",
    "x^3 + y^3 + x^2*y^2",
    "exp(x+y)",
    "(x+2*y)^4",
    "x + y",
    "x - y - 1",
    "x - (y - 1)",
    "-x^2 - y^2",
    "-(x*y)",
    "2*-x",
    "x/y/2",
    "x/(y/2)",
    "2^3^2",
    "(2^3)^2",
    "x^-1",
    "x^(1/2)",
    "x^-(1/2)",
    "sqrt(x^2 + y^2 + 1)",
    "log(1 + x^2 + y^2)",
    "abs(x - y)",
    "cos(x)*cos(y)",
    "sin(x) + sin(y)",
    "exp(-x)*y",
    "1e-3*x + 2.5E+2*y",
    ".5*x*y",
    "3.",
    "1/(1 + x + y)",
    "x*y*x*y",
    "((x))",
    "-(-(x))",
    "-x*y",
    "-x^2",
    "(-x)^2",
    "x*(y + 1)*(x - 1)",
    "exp(sin(x*y))",
    "log(exp(x))",
    "sqrt(abs(x) + 1)",
    "x^2 + 2*x*y + y^2",
    "(x + y)^3 - (x - y)^3",
    "x^0.5 + y^1.5",
    "4*x^3*y - 3*x*y^3",
    "cos(x + y)/(2 + sin(x - y))",
    "x - -y",
    "1 - 2*x + 3*x^2*y - 4*y^3",
    "exp(x)*exp(y) - exp(x + y)",
    "y^6 + x^6",
    "sin(x)^2 + cos(y)^2",
    "1e10*x - 0.000001*y",
};

} // namespace corpus
