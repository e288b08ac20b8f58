#pragma once

#include "depgini/copulas.hpp"
#include "depgini/error.hpp"
#include "depgini/exp_conditionals.hpp"
#include "depgini/gini.hpp"
#include "depgini/marginals.hpp"
#include "depgini/philox.hpp"
#include "depgini/quadrature.hpp"
#include "depgini/report_io.hpp"
#include "depgini/sampling.hpp"
#include "depgini/structure.hpp"
#include "depgini/systems.hpp"
