#pragma once

#include "sunflower/element_set.hpp"
#include "sunflower/rational.hpp"
#include "sunflower/family.hpp"
#include "sunflower/chi.hpp"
#include "sunflower/sunflower.hpp"
#include "sunflower/prefix_code.hpp"
#include "sunflower/encoding_audit.hpp"
#include "sunflower/experiments.hpp"
