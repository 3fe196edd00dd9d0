#pragma once

#include "symwcet/awcet.hpp"
#include "symwcet/cfg.hpp"
#include "symwcet/cft.hpp"
#include "symwcet/error.hpp"
#include "symwcet/formula.hpp"
#include "symwcet/loops.hpp"
#include "symwcet/multiset.hpp"
#include "symwcet/oracle.hpp"
#include "symwcet/pipeline.hpp"
#include "symwcet/program.hpp"
#include "symwcet/restructure.hpp"
#include "symwcet/rewrite.hpp"
#include "symwcet/symbolic.hpp"
