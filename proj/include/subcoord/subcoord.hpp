#pragma once

#include "errors.hpp"
#include "field.hpp"
#include "linalg.hpp"
#include "rational.hpp"
#include "subspace.hpp"
#include "discoord.hpp"
#include "formula.hpp"
#include "random.hpp"
#include "enumerate.hpp"
#include "caching/scheme.hpp"
#include "caching/verify.hpp"
#include "caching/symmetry.hpp"
#include "caching/zdecomp.hpp"
#include "caching/builtin.hpp"
#include "caching/search.hpp"
#include "caching/bounds.hpp"
#include "report.hpp"
#include "commands.hpp"
