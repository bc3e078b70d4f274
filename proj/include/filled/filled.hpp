#pragma once

#include "filled/automorphism.hpp"
#include "filled/build.hpp"
#include "filled/classifier.hpp"
#include "filled/elemset.hpp"
#include "filled/errors.hpp"
#include "filled/group.hpp"
#include "filled/pfs.hpp"
#include "filled/rng.hpp"
#include "filled/search.hpp"
#include "filled/spec.hpp"
#include "filled/structure.hpp"
#include "filled/witnesses.hpp"
