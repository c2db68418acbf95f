#pragma once

#include "idiorec/ais.hpp"
#include "idiorec/config.hpp"
#include "idiorec/error.hpp"
#include "idiorec/evaluate.hpp"
#include "idiorec/ingestion.hpp"
#include "idiorec/ontology.hpp"
#include "idiorec/profile.hpp"
#include "idiorec/rng.hpp"
#include "idiorec/similarity.hpp"
#include "idiorec/synth.hpp"
#include "idiorec/tree_address.hpp"
#include "idiorec/url.hpp"
