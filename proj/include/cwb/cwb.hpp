#pragma once

#include "rational.hpp"
#include "scalar.hpp"
#include "tensor.hpp"
#include "sparse.hpp"
#include "echelon.hpp"
#include "errors.hpp"
#include "algebra.hpp"
#include "cochain.hpp"
#include "operators.hpp"
#include "identities.hpp"
#include "homotopy.hpp"
#include "cobound.hpp"
#include "cohomology.hpp"
#include "io.hpp"
#include "reports.hpp"
