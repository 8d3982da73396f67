#pragma once

#include "helixqm/errors.hpp"
#include "helixqm/quadrature.hpp"
#include "helixqm/curve.hpp"
#include "helixqm/geometry.hpp"
#include "helixqm/operators.hpp"
#include "helixqm/eigen.hpp"
#include "helixqm/jwkb.hpp"
#include "helixqm/config.hpp"
#include "helixqm/commands.hpp"
