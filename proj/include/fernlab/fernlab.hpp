#pragma once

#include "exactnum.hpp"
#include "formulas.hpp"
#include "lattice.hpp"
#include "oracle.hpp"
#include "params.hpp"
#include "render.hpp"
#include "verify.hpp"
