#pragma once

#include "k4ring/abelian.hpp"
#include "k4ring/cohomology.hpp"
#include "k4ring/dsl.hpp"
#include "k4ring/errors.hpp"
#include "k4ring/group_structure.hpp"
#include "k4ring/integer.hpp"
#include "k4ring/k_ring.hpp"
#include "k4ring/relation_oracle.hpp"
#include "k4ring/smith.hpp"
