#pragma once

// Umbrella header: the whole library in one include.

#include "pompeiu/constructors.hpp"
#include "pompeiu/cyclotomic.hpp"
#include "pompeiu/engine.hpp"
#include "pompeiu/errors.hpp"
#include "pompeiu/finite_group.hpp"
#include "pompeiu/group_ring.hpp"
#include "pompeiu/io.hpp"
#include "pompeiu/lattice.hpp"
#include "pompeiu/linalg.hpp"
#include "pompeiu/scalar.hpp"
#include "pompeiu/selftest.hpp"
#include "pompeiu/structure.hpp"
