#pragma once

// Umbrella header.

#include "coxcoh/base.hpp"
#include "coxcoh/buildings.hpp"
#include "coxcoh/corpus.hpp"
#include "coxcoh/coxeter.hpp"
#include "coxcoh/equivariant.hpp"
#include "coxcoh/errors.hpp"
#include "coxcoh/group_ring.hpp"
#include "coxcoh/hecke.hpp"
#include "coxcoh/homology.hpp"
#include "coxcoh/intmatrix.hpp"
#include "coxcoh/json_io.hpp"
#include "coxcoh/mirrored_complex.hpp"
#include "coxcoh/snf.hpp"
#include "coxcoh/verification.hpp"
