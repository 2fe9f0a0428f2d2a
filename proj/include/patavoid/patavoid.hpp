#pragma once

#include "patavoid/avoiders.hpp"
#include "patavoid/containment.hpp"
#include "patavoid/error.hpp"
#include "patavoid/experiment.hpp"
#include "patavoid/integer.hpp"
#include "patavoid/pattern_set.hpp"
#include "patavoid/permutation.hpp"
#include "patavoid/sequence_analysis.hpp"
#include "patavoid/survey.hpp"
#include "patavoid/symmetry.hpp"
#include "patavoid/templates.hpp"
