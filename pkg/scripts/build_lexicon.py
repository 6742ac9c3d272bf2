#!/usr/bin/env python3
"""Regenerate the starter lexicon shipped in src/similemine/data/lexicon.tsv.

Expands curated lemma lists into inflected surface forms with a crude
paradigm generator. The output is a lookup table, not a morphology: a few
generated forms are unattested, which is harmless for tagging fallback.
Verbs are written first, then adjectives, then nouns, so on collisions
(the loader keeps the first entry) verb readings win.
"""

import sys
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "src" / "similemine" / "data" / "lexicon.tsv"

# Present-tense stems; paradigm: -m -š -0 -mo -te + 3pl + infinitive + l-participles.
VERBS_I = """radi spava trči plače skače pada gleda gura hoda igra kuva peva pita puca seva
sanja sija sere smara štuca sluša svira vozi misli muči nosi pali pati pazi pecka pegla
plazi pliva ori pričа prija prede prati piše laje skita trese teši tuče vuče vrti zuji zeva
ždere žuri juri beži leži drži ćuti pamti mrzi kipi gori boli krade""".split()
VERBS_E = """smeje seća boji nada kune čudi ponaša krevelji dere izgleda oseća""".split()

ADJECTIVES = """lep brz spor jak slab mlad star nov dobar loš velik mali dug kratak visok
nizak debeo mršav tvrd mek vruć topao svež čist prljav gladan žedan umoran vredan lenj
pametan glup lud miran nem gluv slep zdrav bolestan bogat siromašan srećan tužan ljut
besan veseo ozbiljan smešan strašan hrabar plašljiv tih glasan oštar tup sladak gorak
kiseo slan bled rumen crven plav zelen žut crn bel beo go bos sam pun prazan lak težak
dubok plitak širok uzak gust redak vlažan suv hladan vreo smoren blesav dosadan zanimljiv
tanak čvrst gibak sjajan mutan bistar veran taman svetao divan ružan fin grub nežan
vatrogasni školski narodni zimski letnji""".split()

NOUNS_M = """konj pas mačak vuk lav tigar medved zec miš pacov ris jelen jež slon majmun
cvet sneg san dan sat beton čelik bor hrast dub grab jasen javor brest kurjak soj
petao golub vrabac soko orao gavran slavuj som šaran sumrak mrav pauk crv leptir komarac
zmaj duh džin vampir đavo anđeo kamen nož mač štap zid krov prozor prag put most grad selo
vetar oblak grom led žar plamen pepeo dim prah šećer med biber hleb sir grah pasulj krompir
krastavac paradajz luk beli_luk limun orah badem čovek brat sin otac deda ujak stric kum
gost kralj car vojnik lovac ribar pastir kovač krojač obućar pekar mesar lekar pravnik
učitelj profesor inženjer direktor glumac pevač igrač pisac pesnik slikar vozač kuvar
konobar zidar stolar vrtlar poštar čuvar sudija vladika đak student radnik seljak gazda
komšija prijatelj neprijatelj junak bik vo ovan jarac prase tele ždrebe magarac bizon nos
lakat prst nokat zub jezik vrat stomak mozak potok kamion voz avion brod čamac točak plug
budak čekić ekser kanap lanac remen džak koš stub panj klip klin top metak pištolj fišek
barut vitez monah pop hodža berberin terzija sokak bunar đeram katanac šporet dušek
jastuk čaršav peškir sapun češalj ogledalo tiganj lonac tanjir escajg viljuška""".split()
NOUNS_F = """mačka koza ovca krava kobila kokoška guska patka ćurka pčela osa muva buva
beba vidra srna strela munja zvezda svila vuna slama pahulja
vaška zmija riba žaba ptica lasta roda sova lisica veverica kornjača gusenica bubamara
žena majka sestra ćerka baba tetka strina ujna snaja zaova svekrva prija devojka cura
udovica kraljica carica vila veštica ala aždaja kuća koliba pojata štala vajat soba
kujna pekara crkva škola bolnica apoteka kafana mehana vodenica stanica kasarna luka
planina gora šuma livada njiva bašta reka bara lokva rosa kiša magla slana suša zima
jesen zora noć ponoć nedelja godina duša glava kosa brada obrva usna ruka šaka noga peta
koža kost krv suza muka briga sreća tuga radost žalost lepota visina dubina širina brzina
snaga slava pamet mudrost ludost hrabrost slabost mladost starost bolest svinja trava
pšenica raž ovas proja pogača slama vuna svila kudelja pređa igla makaze tepsija furuna
voda zemlja vatra sveća lampa peć sekira testera lopata motika kosa_alat vreća torba
korpa flaša čaša kašika so mast čorba supa sarma pita gibanica rakija kafa čaj""".split()
NOUNS_N = """pero selo_n polje brdo drvo lišće cveće voće grožđe žito seno blato zlato
srebro gvožđe olovo staklo platno sukno jaje mleko maslo testo meso salo oko uho čelo
rame koleno stopalo srce pluće jutro podne veče leto proleće sunce nebo more jezero
ostrvo kamenje zvono sedlo uže vino pivo ulje brašno zrno klasje granje korenje stablo
gnezdo krilo perje runo rogovlje kopito vime ime vreme seme pleme breme čudo delo slovo
pismo znanje pevanje igranje spavanje ćutanje gledanje jelo piće odelo platno_n ogledalo_n
koplje strelište dvorište ognjište""".split()

VOWELS = set("aeiou")


def verb_forms(stem: str) -> set[str]:
    if stem.endswith(("i", "a", "e")):
        base = stem[:-1]
        theme = stem[-1]
    else:
        base, theme = stem, "i"
    forms = {stem, stem + "m", stem + "š", stem + "mo", stem + "te"}
    forms.add(base + ("e" if theme == "i" else "aju" if theme == "a" else "u"))
    forms.add(base + theme + "ti")
    forms.add(base + theme + "o")
    for end in ("la", "lo", "li", "le"):
        forms.add(base + theme + end)
    return forms


def adjective_forms(lemma: str) -> set[str]:
    base = lemma
    if lemma.endswith("o") and len(lemma) > 2 and lemma[-2] in VOWELS:
        base = lemma[:-1] + "l"  # beo -> bel-
    elif lemma.endswith("ao"):
        base = lemma[:-2] + "l"
    elif len(lemma) > 3 and lemma[-2] == "a" and lemma[-1] not in VOWELS:
        base = lemma[:-2] + lemma[-1]  # fleeting a: dobar -> dobr-
    elif lemma.endswith("i"):
        base = lemma[:-1]
    forms = {lemma}
    for end in ("a", "o", "i", "e", "u", "og", "om", "im", "ih", "oj", "ima", "ama"):
        forms.add(base + end)
    return forms


def noun_forms(lemma: str, gender: str) -> set[str]:
    lemma = lemma.replace("_", " ").split(" ")[0]
    forms = {lemma}
    if gender == "m":
        for end in ("a", "u", "om", "e", "i", "ima"):
            forms.add(lemma + end)
        if len(lemma) <= 4:
            for end in ("ovi", "ova", "ove", "ovima"):
                forms.add(lemma + end)
    elif gender == "f":
        if lemma.endswith("a"):
            base = lemma[:-1]
            for end in ("a", "e", "i", "u", "om", "ama"):
                forms.add(base + end)
        else:
            for end in ("i", "ju", "ima"):
                forms.add(lemma + end)
    else:
        base = lemma[:-1] if lemma[-1] in "oe" else lemma
        for end in ("o", "a", "u", "om", "ima"):
            forms.add(base + end)
    return forms


def main():
    rows: list[tuple[str, str]] = []
    for stem in VERBS_I + VERBS_E:
        for f in sorted(verb_forms(stem)):
            rows.append((f, "V"))
    for lemma in ADJECTIVES:
        for f in sorted(adjective_forms(lemma)):
            rows.append((f, "A"))
    for lemma in NOUNS_M:
        for f in sorted(noun_forms(lemma, "m")):
            rows.append((f, "N"))
    for lemma in NOUNS_F:
        for f in sorted(noun_forms(lemma, "f")):
            rows.append((f, "N"))
    for lemma in NOUNS_N:
        for f in sorted(noun_forms(lemma, "n")):
            rows.append((f, "N"))

    seen = set()
    lines = []
    for form, tag in rows:
        form = form.strip().lower()
        if not form or form in seen:
            continue
        seen.add(form)
        lines.append(f"{form}\t{tag}")

    OUT.write_text(
        "# Starter lexicon, generated by scripts/build_lexicon.py\n"
        + "\n".join(lines)
        + "\n",
        encoding="utf-8",
    )
    print(f"wrote {len(lines)} forms to {OUT}", file=sys.stderr)


if __name__ == "__main__":
    main()
