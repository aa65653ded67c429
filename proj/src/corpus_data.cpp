// SPDX-License-Identifier: Apache-2.0
// Built-in German defaults: abbreviation list and a small closed-class /
// high-frequency tag lexicon. Both can be replaced by user files.

#include "corpuslens/corpus.hpp"

namespace corpuslens::corpus {

namespace {

const char* const kAbbreviations[] = {
    "z.",     "z.b.",   "d.h.",   "u.a.",
    "usw.",   "bzw.",   "vgl.",   "ca.",   "etc.",   "evtl.",  "ggf.",   "inkl.",  "bspw.",
    "sog.",   "dr.",    "prof.",  "nr.",   "s.",     "abs.",   "art.",   "str.",   "mio.",
    "mrd.",   "v.",     "chr.",   "jh.",   "jhd.",   "gem.",   "lt.",    "max.",   "min.",
    "mind.",  "o.ä.",   "u.ä.",   "zzgl.", "abb.",   "tab.",   "kap.",   "bd.",    "hrsg.",
    "ff.",    "geb.",   "gest.",  "i.d.r.", "i.v.m.", "ebd.",  "z.t.",   "u.u.",   "allg.",
    "bzgl.",  "eigtl.", "einschl.", "entspr.", "dt.", "engl.",  "frz.",   "europ.", "jew.",
    "mtl.",   "tsd.",   "u.v.m.", "usf.",  "zit.",   "ziff.",  "st.",    "jan.",   "feb.",
    "apr.",   "aug.",   "sept.",  "okt.",  "nov.",   "dez.",   "z.zt.",  "m.e.",   "o.g.",
    "sek.",   "std.",   "mind.",  "bes.",  "insb.",  "bsp.",   "gg.",    "hl.",    "e.v.",
};

struct LexEntry {
  const char* word;
  Pos pos;
};

// Closed-class words map to OTHER so that only lexical words count as
// content words. Frequent auxiliaries, modals, adjectives and adverbs are
// listed explicitly because the suffix heuristics cannot catch them.
const LexEntry kLexicon[] = {
    // articles and determiners
    {"der", Pos::Other}, {"die", Pos::Other}, {"das", Pos::Other}, {"den", Pos::Other},
    {"dem", Pos::Other}, {"des", Pos::Other}, {"ein", Pos::Other}, {"eine", Pos::Other},
    {"einen", Pos::Other}, {"einem", Pos::Other}, {"einer", Pos::Other}, {"eines", Pos::Other},
    {"kein", Pos::Other}, {"keine", Pos::Other}, {"keinen", Pos::Other}, {"keiner", Pos::Other},
    {"dies", Pos::Other}, {"diese", Pos::Other}, {"dieser", Pos::Other}, {"dieses", Pos::Other},
    {"diesen", Pos::Other}, {"diesem", Pos::Other}, {"jede", Pos::Other}, {"jeder", Pos::Other},
    {"jedes", Pos::Other}, {"jeden", Pos::Other}, {"alle", Pos::Other}, {"allen", Pos::Other},
    {"aller", Pos::Other}, {"alles", Pos::Other}, {"welche", Pos::Other}, {"welcher", Pos::Other},
    // pronouns
    {"ich", Pos::Other}, {"du", Pos::Other}, {"er", Pos::Other}, {"sie", Pos::Other},
    {"es", Pos::Other}, {"wir", Pos::Other}, {"ihr", Pos::Other}, {"mich", Pos::Other},
    {"dich", Pos::Other}, {"sich", Pos::Other}, {"uns", Pos::Other}, {"euch", Pos::Other},
    {"ihm", Pos::Other}, {"ihn", Pos::Other}, {"ihnen", Pos::Other}, {"man", Pos::Other},
    {"unser", Pos::Other}, {"unsere", Pos::Other}, {"unseren", Pos::Other},
    {"unserer", Pos::Other}, {"unserem", Pos::Other}, {"unseres", Pos::Other},
    {"ihre", Pos::Other}, {"ihren", Pos::Other}, {"ihrer", Pos::Other}, {"ihrem", Pos::Other},
    {"seine", Pos::Other}, {"seinen", Pos::Other}, {"seiner", Pos::Other}, {"seinem", Pos::Other},
    {"wer", Pos::Other}, {"was", Pos::Other}, {"wem", Pos::Other}, {"wen", Pos::Other},
    // prepositions
    {"in", Pos::Other}, {"im", Pos::Other}, {"ins", Pos::Other}, {"an", Pos::Other},
    {"am", Pos::Other}, {"auf", Pos::Other}, {"aus", Pos::Other}, {"bei", Pos::Other},
    {"beim", Pos::Other}, {"mit", Pos::Other}, {"nach", Pos::Other}, {"von", Pos::Other},
    {"vom", Pos::Other}, {"zu", Pos::Other}, {"zum", Pos::Other}, {"zur", Pos::Other},
    {"für", Pos::Other}, {"über", Pos::Other}, {"unter", Pos::Other}, {"vor", Pos::Other},
    {"hinter", Pos::Other}, {"neben", Pos::Other}, {"zwischen", Pos::Other},
    {"durch", Pos::Other}, {"gegen", Pos::Other}, {"ohne", Pos::Other}, {"um", Pos::Other},
    {"bis", Pos::Other}, {"seit", Pos::Other}, {"während", Pos::Other}, {"wegen", Pos::Other},
    {"trotz", Pos::Other}, {"statt", Pos::Other}, {"innerhalb", Pos::Other},
    {"außerhalb", Pos::Other}, {"ab", Pos::Other}, {"pro", Pos::Other},
    // conjunctions and particles
    {"und", Pos::Other}, {"oder", Pos::Other}, {"aber", Pos::Other}, {"denn", Pos::Other},
    {"sondern", Pos::Other}, {"dass", Pos::Other}, {"daß", Pos::Other}, {"weil", Pos::Other},
    {"wenn", Pos::Other}, {"ob", Pos::Other}, {"als", Pos::Other}, {"wie", Pos::Other},
    {"sowie", Pos::Other}, {"sowohl", Pos::Other}, {"weder", Pos::Other}, {"noch", Pos::Adv},
    {"nicht", Pos::Other}, {"damit", Pos::Other}, {"sodass", Pos::Other}, {"falls", Pos::Other},
    {"zu", Pos::Other}, {"ja", Pos::Other}, {"nein", Pos::Other},
    // auxiliaries, modals and very frequent verbs
    {"ist", Pos::Verb}, {"sind", Pos::Verb}, {"war", Pos::Verb}, {"waren", Pos::Verb},
    {"sein", Pos::Verb}, {"bin", Pos::Verb}, {"bist", Pos::Verb}, {"seid", Pos::Verb},
    {"wird", Pos::Verb}, {"werden", Pos::Verb}, {"wurde", Pos::Verb}, {"wurden", Pos::Verb},
    {"worden", Pos::Verb}, {"hat", Pos::Verb}, {"haben", Pos::Verb}, {"habe", Pos::Verb},
    {"hatte", Pos::Verb}, {"hatten", Pos::Verb}, {"kann", Pos::Verb}, {"können", Pos::Verb},
    {"konnte", Pos::Verb}, {"muss", Pos::Verb}, {"müssen", Pos::Verb}, {"soll", Pos::Verb},
    {"sollen", Pos::Verb}, {"sollte", Pos::Verb}, {"will", Pos::Verb}, {"wollen", Pos::Verb},
    {"darf", Pos::Verb}, {"dürfen", Pos::Verb}, {"möchte", Pos::Verb}, {"möchten", Pos::Verb},
    {"gibt", Pos::Verb}, {"geben", Pos::Verb}, {"steht", Pos::Verb}, {"stehen", Pos::Verb},
    {"macht", Pos::Verb}, {"machen", Pos::Verb}, {"bauen", Pos::Verb}, {"baut", Pos::Verb},
    {"brauchen", Pos::Verb}, {"braucht", Pos::Verb}, {"setzen", Pos::Verb},
    {"fordern", Pos::Verb}, {"fördern", Pos::Verb}, {"stärken", Pos::Verb},
    {"schaffen", Pos::Verb}, {"sorgen", Pos::Verb}, {"lehnen", Pos::Verb},
    // adjectives the suffix table misses
    {"groß", Pos::Adj}, {"gut", Pos::Adj}, {"neu", Pos::Adj}, {"klein", Pos::Adj},
    {"hoch", Pos::Adj}, {"alt", Pos::Adj}, {"lang", Pos::Adj}, {"stark", Pos::Adj},
    {"frei", Pos::Adj}, {"gleich", Pos::Adj}, {"gerecht", Pos::Adj}, {"sicher", Pos::Adj},
    {"fair", Pos::Adj}, {"jung", Pos::Adj}, {"arm", Pos::Adj}, {"reich", Pos::Adj},
    {"klar", Pos::Adj}, {"offen", Pos::Adj}, {"ganz", Pos::Adj}, {"eigen", Pos::Adj},
    {"echt", Pos::Adj}, {"modern", Pos::Adj}, {"deutsch", Pos::Adj}, {"schön", Pos::Adj},
    {"schlecht", Pos::Adj}, {"böse", Pos::Adj}, {"gesund", Pos::Adj}, {"sauber", Pos::Adj},
    {"nah", Pos::Adj}, {"weit", Pos::Adj}, {"kurz", Pos::Adj}, {"schwer", Pos::Adj},
    {"leicht", Pos::Adj}, {"warm", Pos::Adj}, {"kalt", Pos::Adj}, {"grün", Pos::Adj},
    {"link", Pos::Adj}, {"recht", Pos::Adj}, {"viel", Pos::Adj}, {"wenig", Pos::Adj},
    {"besser", Pos::Adj}, {"beste", Pos::Adj}, {"mehr", Pos::Adv},
    // adverbs
    {"sehr", Pos::Adv}, {"immer", Pos::Adv}, {"auch", Pos::Adv}, {"heute", Pos::Adv},
    {"hier", Pos::Adv}, {"dort", Pos::Adv}, {"jetzt", Pos::Adv}, {"schon", Pos::Adv},
    {"bereits", Pos::Adv}, {"dann", Pos::Adv}, {"daher", Pos::Adv}, {"deshalb", Pos::Adv},
    {"gemeinsam", Pos::Adv}, {"weiter", Pos::Adv}, {"besonders", Pos::Adv},
    {"gerade", Pos::Adv}, {"oft", Pos::Adv}, {"wieder", Pos::Adv}, {"nie", Pos::Adv},
    {"jedoch", Pos::Adv}, {"zudem", Pos::Adv}, {"außerdem", Pos::Adv}, {"ebenfalls", Pos::Adv},
    {"vielleicht", Pos::Adv}, {"etwa", Pos::Adv}, {"endlich", Pos::Adv}, {"sofort", Pos::Adv},
    {"bisher", Pos::Adv}, {"künftig", Pos::Adv}, {"zukünftig", Pos::Adv},
    {"insbesondere", Pos::Adv}, {"nur", Pos::Adv}, {"so", Pos::Adv}, {"überall", Pos::Adv},
    {"zusammen", Pos::Adv}, {"morgen", Pos::Adv}, {"bald", Pos::Adv}, {"dabei", Pos::Adv},
};

}  // namespace

const AbbreviationList& AbbreviationList::german() {
  static const AbbreviationList list = [] {
    std::vector<std::string> v;
    for (const char* a : kAbbreviations) v.emplace_back(a);
    return AbbreviationList(std::move(v));
  }();
  return list;
}

const TagLexicon& TagLexicon::german() {
  static const TagLexicon lex = [] {
    TagLexicon l;
    for (const auto& e : kLexicon) l.insert(e.word, e.pos);
    return l;
  }();
  return lex;
}

}  // namespace corpuslens::corpus
