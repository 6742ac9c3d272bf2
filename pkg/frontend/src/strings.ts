// Externalized UI strings, Serbian Latin.

export const STR = {
  appTitle: "Zbirka poređenja",
  tabBrowse: "Pregled",
  tabSearch: "Pretraga",
  tabSubmit: "Dodaj",
  tabCurate: "Kurator",
  browseEmpty: "Zbirka je prazna.",
  pageInfo: (page: number, total: number) => `Strana ${page} od ${total}`,
  prevPage: "‹ Prethodna",
  nextPage: "Sledeća ›",
  searchPlaceholder: "npr. bela kao sneg",
  searchButton: "Traži",
  noResults: "Nema rezultata.",
  submitLead: "Dodajte poređenje koje nedostaje u zbirci.",
  submitPlaceholder: "npr. vredan kao mrav",
  submitButton: "Pošalji",
  contributorPlaceholder: "Vaše ime (nije obavezno)",
  pendingNotice:
    "Hvala! Poređenje je sačuvano i biće vidljivo kada ga kurator odobri.",
  duplicateNotice: "Ovo poređenje već postoji u zbirci:",
  loginTitle: "Prijava kuratora",
  usernameLabel: "Korisničko ime",
  passwordLabel: "Lozinka",
  loginButton: "Prijavi se",
  logoutButton: "Odjava",
  queueTitle: "Poređenja na čekanju",
  queueEmpty: "Nema poređenja na čekanju.",
  approveButton: "Odobri",
  rejectButton: "Odbij",
  editButton: "Izmeni",
  saveButton: "Sačuvaj",
  cancelButton: "Otkaži",
  editedBadge: (before: string) => `izmenjeno iz „${before}”`,
  submittedBy: (who: string) => `poslao: ${who}`,
  networkError: "Greška u vezi sa serverom. Pokušajte ponovo.",
  conflictRefreshed: "Zapis je u međuvremenu promenjen; prikaz je osvežen.",
};

// Every error code the service documents gets its own rendering.
export const ERROR_TEXT: Record<string, string> = {
  duplicate: "Poređenje već postoji u zbirci.",
  not_a_simile: "Fraza mora da sadrži veznik „kao”, „ko” ili „k'o”.",
  invalid_request: "Zahtev nije ispravan. Proverite unos.",
  rate_limited: "Poslali ste previše poređenja. Sačekajte minut i pokušajte ponovo.",
  unauthorized: "Potrebna je prijava kuratora.",
  not_found: "Traženi zapis ne postoji.",
  illegal_transition: "Zapis je već obrađen u međuvremenu.",
};

export function errorText(code: string): string {
  return ERROR_TEXT[code] ?? `${STR.networkError} (${code})`;
}
