#pragma once

#include "nilws/families.hpp"
#include "nilws/matrix.hpp"
#include "nilws/metric_pair.hpp"
#include "nilws/nilalgebra.hpp"
#include "nilws/nonsingular.hpp"
#include "nilws/normalizer.hpp"
#include "nilws/numeric.hpp"
#include "nilws/obstruction.hpp"
#include "nilws/octonion.hpp"
#include "nilws/operator_nullspace.hpp"
#include "nilws/quaternion.hpp"
#include "nilws/quaternionic_blocks.hpp"
#include "nilws/rational.hpp"
#include "nilws/rng.hpp"
#include "nilws/search.hpp"
#include "nilws/serialize.hpp"
#include "nilws/so_basis.hpp"
#include "nilws/spectrum.hpp"
#include "nilws/su2.hpp"
#include "nilws/verdict.hpp"
#include "nilws/version.hpp"
#include "nilws/witness.hpp"
