#pragma once

#include "gencluster/common.hpp"
#include "gencluster/semifield.hpp"
#include "gencluster/matrix.hpp"
#include "gencluster/coeff_ring.hpp"
#include "gencluster/laurent.hpp"
#include "gencluster/rational_fn.hpp"
#include "gencluster/gcd.hpp"
#include "gencluster/pattern.hpp"
#include "gencluster/expr_text.hpp"
#include "gencluster/jacobian.hpp"
#include "gencluster/fpoly.hpp"
#include "gencluster/dmat.hpp"
#include "gencluster/xgraph.hpp"
#include "gencluster/json_io.hpp"
