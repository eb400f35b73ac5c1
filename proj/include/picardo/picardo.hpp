#ifndef PICARDO_PICARDO_HPP
#define PICARDO_PICARDO_HPP

#include "picardo/contraction.hpp"
#include "picardo/errors.hpp"
#include "picardo/expression.hpp"
#include "picardo/geraghty.hpp"
#include "picardo/hat_sequence.hpp"
#include "picardo/integral.hpp"
#include "picardo/metric.hpp"
#include "picardo/picard.hpp"
#include "picardo/problem_file.hpp"
#include "picardo/quadrature.hpp"
#include "picardo/report.hpp"
#include "picardo/run.hpp"

#endif // PICARDO_PICARDO_HPP
