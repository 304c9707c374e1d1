#pragma once

#include "lhy/eigenstates.hpp"
#include "lhy/error.hpp"
#include "lhy/fock_ladder.hpp"
#include "lhy/genfunc.hpp"
#include "lhy/hamiltonians.hpp"
#include "lhy/hypergeom.hpp"
#include "lhy/lattice.hpp"
#include "lhy/matrix.hpp"
#include "lhy/oracle.hpp"
#include "lhy/pair_transform.hpp"
#include "lhy/verify.hpp"
#include "lhy/wu_sector.hpp"
