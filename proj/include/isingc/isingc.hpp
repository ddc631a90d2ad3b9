#pragma once

#include "isingc/branch.hpp"
#include "isingc/circuit.hpp"
#include "isingc/errors.hpp"
#include "isingc/exp_sum.hpp"
#include "isingc/json_io.hpp"
#include "isingc/lattice.hpp"
#include "isingc/layout.hpp"
#include "isingc/models.hpp"
#include "isingc/overlap.hpp"
#include "isingc/pauli.hpp"
#include "isingc/reduction.hpp"
#include "isingc/scaled_complex.hpp"
#include "isingc/tableau.hpp"
