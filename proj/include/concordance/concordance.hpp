#pragma once

#include "concordance/integer.hpp"
#include "concordance/forms.hpp"
#include "concordance/embed.hpp"
#include "concordance/laurent.hpp"
#include "concordance/knotalg.hpp"
#include "concordance/torus.hpp"
#include "concordance/pipeline.hpp"
#include "concordance/json_io.hpp"
#include "concordance/cache.hpp"
