#pragma once

#include "fsel/cutoff.hpp"
#include "fsel/dataset.hpp"
#include "fsel/error.hpp"
#include "fsel/feature_mask.hpp"
#include "fsel/measures.hpp"
#include "fsel/random.hpp"
#include "fsel/search.hpp"
#include "fsel/version.hpp"
#include "fsel/wrapper.hpp"
