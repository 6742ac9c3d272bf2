// Single-page UI: public browse/search/submit plus the curator queue.
// All state lives in one App instance; server interaction is async with
// optimistic queue updates reconciled against the response.

import * as api from "./api.js";
import { STR, errorText } from "./strings.js";

export type Tab = "browse" | "search" | "submit" | "curate";

export interface ViewState {
  tab: Tab;
  page: number;
  query: string;
  session: api.Session | null;
  pendingItems: api.SimileRecord[];
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  if (text) node.textContent = text;
  return node;
}

function recordRow(record: api.SimileRecord): HTMLElement {
  const row = el("li", { class: "simile-row", "data-id": String(record.id) });
  row.appendChild(el("span", { class: "form" }, record.display_form));
  if (record.kind !== "unknown") {
    row.appendChild(el("span", { class: "kind" }, record.kind));
  }
  return row;
}

export class App {
  state: ViewState = {
    tab: "browse",
    page: 1,
    query: "",
    session: null,
    pendingItems: [],
  };

  constructor(public root: HTMLElement) {}

  // -- frame ---------------------------------------------------------------

  renderFrame(): void {
    this.root.textContent = "";
    const header = el("header");
    header.appendChild(el("h1", {}, STR.appTitle));
    const nav = el("nav", { class: "tabs" });
    const tabs: [Tab, string][] = [
      ["browse", STR.tabBrowse],
      ["search", STR.tabSearch],
      ["submit", STR.tabSubmit],
      ["curate", STR.tabCurate],
    ];
    for (const [tab, label] of tabs) {
      const button = el("button", { "data-tab": tab, class: "tab" }, label);
      if (tab === this.state.tab) button.classList.add("active");
      button.addEventListener("click", () => void this.show(tab));
      nav.appendChild(button);
    }
    header.appendChild(nav);
    this.root.appendChild(header);
    this.root.appendChild(el("main", { id: "view" }));
  }

  view(): HTMLElement {
    return this.root.querySelector("#view") as HTMLElement;
  }

  async show(tab: Tab): Promise<void> {
    this.state.tab = tab;
    this.renderFrame();
    if (tab === "browse") await this.showBrowse();
    else if (tab === "search") this.showSearch();
    else if (tab === "submit") this.showSubmit();
    else await this.showCurate();
  }

  banner(kind: "error" | "notice" | "duplicate", text: string): HTMLElement {
    const box = el("div", { class: `banner ${kind}`, role: "alert" }, text);
    return box;
  }

  // -- browse ---------------------------------------------------------------

  async showBrowse(): Promise<void> {
    const view = this.view();
    view.textContent = "";
    let page: api.BrowsePage;
    try {
      page = await api.browse(this.state.page);
    } catch {
      const banner = this.banner("error", STR.networkError);
      const retry = el("button", { class: "retry" }, "Pokušaj ponovo");
      retry.addEventListener("click", () => void this.showBrowse());
      banner.appendChild(retry);
      view.appendChild(banner);
      return;
    }
    if (page.total === 0) {
      view.appendChild(el("p", { class: "empty" }, STR.browseEmpty));
      return;
    }
    const list = el("ul", { class: "similes", id: "browse-list" });
    for (const record of page.items) list.appendChild(recordRow(record));
    view.appendChild(list);

    const pager = el("div", { class: "pager" });
    const prev = el("button", { id: "prev-page" }, STR.prevPage);
    prev.disabled = page.page <= 1;
    prev.addEventListener("click", () => {
      this.state.page -= 1;
      void this.showBrowse();
    });
    const next = el("button", { id: "next-page" }, STR.nextPage);
    next.disabled = page.page >= page.total_pages;
    next.addEventListener("click", () => {
      this.state.page += 1;
      void this.showBrowse();
    });
    pager.appendChild(prev);
    pager.appendChild(el("span", {}, STR.pageInfo(page.page, page.total_pages)));
    pager.appendChild(next);
    view.appendChild(pager);
  }

  // -- search ----------------------------------------------------------------

  showSearch(): void {
    const view = this.view();
    view.textContent = "";
    const form = el("form", { id: "search-form" });
    const input = el("input", {
      id: "search-input",
      placeholder: STR.searchPlaceholder,
      value: this.state.query,
    });
    const button = el("button", { type: "submit" }, STR.searchButton);
    form.appendChild(input);
    form.appendChild(button);
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.runSearch(input.value);
    });
    view.appendChild(form);
    view.appendChild(el("div", { id: "search-results" }));
  }

  async runSearch(query: string): Promise<void> {
    this.state.query = query;
    const results = this.view().querySelector("#search-results") as HTMLElement;
    results.textContent = "";
    let items: api.SimileRecord[];
    try {
      ({ items } = await api.search(query));
    } catch (error) {
      results.appendChild(this.banner("error",
        error instanceof api.ApiError ? errorText(error.code) : STR.networkError));
      return;
    }
    if (items.length === 0) {
      results.appendChild(el("p", { class: "empty" }, STR.noResults));
      return;
    }
    const list = el("ul", { class: "similes" });
    for (const record of items) list.appendChild(recordRow(record));
    results.appendChild(list);
  }

  // -- submit ----------------------------------------------------------------

  showSubmit(): void {
    const view = this.view();
    view.textContent = "";
    view.appendChild(el("p", {}, STR.submitLead));
    const form = el("form", { id: "submit-form" });
    const phrase = el("input", { id: "submit-phrase", placeholder: STR.submitPlaceholder });
    const contributor = el("input", {
      id: "submit-contributor",
      placeholder: STR.contributorPlaceholder,
    });
    const button = el("button", { type: "submit" }, STR.submitButton);
    form.appendChild(phrase);
    form.appendChild(contributor);
    form.appendChild(button);
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.runSubmit(phrase.value, contributor.value);
    });
    view.appendChild(form);
    view.appendChild(el("div", { id: "submit-outcome" }));
  }

  async runSubmit(phrase: string, contributor: string): Promise<void> {
    const outcome = this.view().querySelector("#submit-outcome") as HTMLElement;
    outcome.textContent = "";
    try {
      await api.submit(phrase, contributor || undefined);
    } catch (error) {
      if (error instanceof api.ApiError && error.code === "duplicate") {
        const box = this.banner("duplicate", STR.duplicateNotice);
        const existing = error.payload.existing as api.SimileRecord | undefined;
        if (existing) {
          const shown = el("ul", { class: "similes" });
          shown.appendChild(recordRow(existing));
          box.appendChild(shown);
        }
        outcome.appendChild(box);
      } else if (error instanceof api.ApiError) {
        // 422 validation (inline reason), 429 cooldown, anything else typed
        outcome.appendChild(this.banner("error", errorText(error.code)));
      } else {
        outcome.appendChild(this.banner("error", STR.networkError));
      }
      return;
    }
    outcome.appendChild(this.banner("notice", STR.pendingNotice));
  }

  // -- curation ----------------------------------------------------------------

  async showCurate(): Promise<void> {
    if (!this.state.session) {
      this.showLogin();
      return;
    }
    await this.showQueue();
  }

  showLogin(message?: string): void {
    const view = this.view();
    view.textContent = "";
    view.appendChild(el("h2", {}, STR.loginTitle));
    if (message) view.appendChild(this.banner("error", message));
    const form = el("form", { id: "login-form" });
    const user = el("input", { id: "login-user", placeholder: STR.usernameLabel });
    const pass = el("input", {
      id: "login-pass",
      type: "password",
      placeholder: STR.passwordLabel,
    });
    const button = el("button", { type: "submit" }, STR.loginButton);
    form.appendChild(user);
    form.appendChild(pass);
    form.appendChild(button);
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.runLogin(user.value, pass.value);
    });
    view.appendChild(form);
  }

  async runLogin(username: string, password: string): Promise<void> {
    try {
      this.state.session = await api.login(username, password);
    } catch (error) {
      this.showLogin(error instanceof api.ApiError ? errorText(error.code) : STR.networkError);
      return;
    }
    await this.showQueue();
  }

  logout(): void {
    this.state.session = null;
    this.showLogin();
  }

  requireSession(): string | null {
    return this.state.session ? this.state.session.token : null;
  }

  async showQueue(notice?: string): Promise<void> {
    const token = this.requireSession();
    if (token === null) {
      this.showLogin();
      return;
    }
    const view = this.view();
    view.textContent = "";
    const bar = el("div", { class: "queue-bar" });
    bar.appendChild(el("h2", {}, STR.queueTitle));
    const logout = el("button", { id: "logout" }, STR.logoutButton);
    logout.addEventListener("click", () => this.logout());
    bar.appendChild(logout);
    view.appendChild(bar);
    if (notice) view.appendChild(this.banner("notice", notice));

    try {
      ({ items: this.state.pendingItems } = await api.pending(token));
    } catch (error) {
      if (error instanceof api.ApiError && error.status === 401) {
        this.state.session = null;
        this.showLogin(errorText("unauthorized"));
        return;
      }
      view.appendChild(this.banner("error", STR.networkError));
      return;
    }
    const queue = el("div", { id: "queue" });
    view.appendChild(queue);
    this.renderQueueRows();
  }

  renderQueueRows(): void {
    const queue = this.view().querySelector("#queue") as HTMLElement;
    queue.textContent = "";
    if (this.state.pendingItems.length === 0) {
      queue.appendChild(el("p", { class: "empty" }, STR.queueEmpty));
      return;
    }
    const list = el("ul", { class: "queue-rows" });
    for (const record of this.state.pendingItems) {
      list.appendChild(this.queueRow(record));
    }
    queue.appendChild(list);
  }

  queueRow(record: api.SimileRecord): HTMLElement {
    const row = el("li", { class: "queue-row", "data-id": String(record.id) });
    row.appendChild(el("span", { class: "form" }, record.display_form));
    if (record.submitted_by) {
      row.appendChild(el("span", { class: "who" }, STR.submittedBy(record.submitted_by)));
    }
    const edited = (record.revisions ?? []).filter((r) => r.action === "edited");
    if (edited.length > 0) {
      // edits show before/after
      row.appendChild(
        el("span", { class: "edited" }, STR.editedBadge(edited[edited.length - 1].before)),
      );
    }
    const approve = el("button", { class: "approve" }, STR.approveButton);
    approve.addEventListener("click", () => void this.runDecision(record.id, "approve"));
    const reject = el("button", { class: "reject" }, STR.rejectButton);
    reject.addEventListener("click", () => void this.runDecision(record.id, "reject"));
    const edit = el("button", { class: "edit" }, STR.editButton);
    edit.addEventListener("click", () => this.startEdit(row, record));
    row.appendChild(approve);
    row.appendChild(reject);
    row.appendChild(edit);
    return row;
  }

  async runDecision(id: number, action: "approve" | "reject"): Promise<void> {
    const token = this.requireSession();
    if (token === null) {
      this.showLogin();
      return;
    }
    // optimistic: drop the row now, restore or refresh on failure
    const kept = this.state.pendingItems;
    this.state.pendingItems = kept.filter((r) => r.id !== id);
    this.renderQueueRows();
    try {
      await (action === "approve" ? api.approve(id, token) : api.reject(id, token));
    } catch (error) {
      if (error instanceof api.ApiError && error.status === 401) {
        this.state.session = null;
        this.showLogin(errorText("unauthorized"));
        return;
      }
      // conflict: another tab acted first; reconcile with server state
      await this.showQueue(STR.conflictRefreshed);
    }
  }

  startEdit(row: HTMLElement, record: api.SimileRecord): void {
    row.textContent = "";
    const input = el("input", { class: "edit-input", value: record.display_form });
    const save = el("button", { class: "save" }, STR.saveButton);
    const cancel = el("button", { class: "cancel" }, STR.cancelButton);
    save.addEventListener("click", () => void this.runEdit(record.id, input.value));
    cancel.addEventListener("click", () => this.renderQueueRows());
    row.appendChild(input);
    row.appendChild(save);
    row.appendChild(cancel);
  }

  async runEdit(id: number, displayForm: string): Promise<void> {
    const token = this.requireSession();
    if (token === null) {
      this.showLogin();
      return;
    }
    try {
      const { record } = await api.edit(id, displayForm, token);
      this.state.pendingItems = this.state.pendingItems.map((r) =>
        r.id === id ? record : r,
      );
      this.renderQueueRows();
    } catch (error) {
      if (error instanceof api.ApiError && error.status === 401) {
        this.state.session = null;
        this.showLogin(errorText("unauthorized"));
        return;
      }
      if (error instanceof api.ApiError) {
        this.renderQueueRows();
        const queue = this.view().querySelector("#queue") as HTMLElement;
        queue.prepend(this.banner("error", errorText(error.code)));
        return;
      }
      await this.showQueue();
    }
  }
}

export async function boot(root: HTMLElement, apiBase = ""): Promise<App> {
  api.setApiBase(apiBase);
  const app = new App(root);
  await app.show("browse");
  return app;
}
