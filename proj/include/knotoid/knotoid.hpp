#pragma once

#include "knotoid/gauss_code.hpp"
#include "knotoid/embedding.hpp"
#include "knotoid/moves.hpp"
#include "knotoid/polynomial.hpp"
#include "knotoid/invariants.hpp"
#include "knotoid/covers.hpp"
#include "knotoid/enumerate.hpp"
#include "knotoid/classify.hpp"
#include "knotoid/io.hpp"
