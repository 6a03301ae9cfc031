#pragma once

// Umbrella header.

#include "wnc/constructions.hpp"
#include "wnc/decompositions.hpp"
#include "wnc/error.hpp"
#include "wnc/report.hpp"
#include "wnc/ring.hpp"
#include "wnc/structure.hpp"
#include "wnc/theorems.hpp"
