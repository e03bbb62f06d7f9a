#pragma once

#include "leibniz/algebra.hpp"
#include "leibniz/catalog.hpp"
#include "leibniz/derivations.hpp"
#include "leibniz/json_io.hpp"
#include "leibniz/localder.hpp"
#include "leibniz/matrix.hpp"
#include "leibniz/operators.hpp"
#include "leibniz/rational.hpp"
#include "leibniz/sampler.hpp"
#include "leibniz/subspace.hpp"
#include "leibniz/twolocal.hpp"
