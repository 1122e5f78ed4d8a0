#pragma once

#include "troplp/semiring.hpp"
#include "troplp/linalg.hpp"
#include "troplp/instance.hpp"
#include "troplp/tangent.hpp"
#include "troplp/pivot.hpp"
#include "troplp/cramer.hpp"
#include "troplp/simplex.hpp"
#include "troplp/oracle.hpp"
