// kwproto :: umbrella header

#pragma once

#include "kwproto/bitstring.hpp"
#include "kwproto/constructions.hpp"
#include "kwproto/error.hpp"
#include "kwproto/formulas/formula.hpp"
#include "kwproto/formulas/saturation.hpp"
#include "kwproto/function.hpp"
#include "kwproto/io/dot.hpp"
#include "kwproto/io/function_io.hpp"
#include "kwproto/io/proof_io.hpp"
#include "kwproto/io/protocol_io.hpp"
#include "kwproto/label.hpp"
#include "kwproto/normalize.hpp"
#include "kwproto/protocol.hpp"
#include "kwproto/reslin/interpolant.hpp"
#include "kwproto/reslin/poly.hpp"
#include "kwproto/reslin/refutation.hpp"
#include "kwproto/reslin/resolution.hpp"
#include "kwproto/simulate/simulate.hpp"
#include "kwproto/simulate/size_accounting.hpp"
#include "kwproto/simulate/skeleton.hpp"
#include "kwproto/simulate/tree.hpp"
#include "kwproto/simulate/witness.hpp"
#include "kwproto/value.hpp"
#include "kwproto/verifier.hpp"
