/** Controller wiring the grid, panels, tabs, and alpha slider to the
 * service. Mutations go through a debounced single-in-flight gate;
 * reads may overlap and the newest revision wins the chip.
 */
import { ApiError, ConnectionError } from "./api.js";
import type { ServiceApi } from "./api.js";
import { MutationGate } from "./flight.js";
import { formatAlpha } from "./format.js";
import { buildGridViewModel, renderGridHtml } from "./gridview.js";
import type { FootprintSets } from "./gridview.js";
import {
  buildContrastModel,
  buildStatePanel,
  renderContrastHtml,
  renderExplanationHtml,
  renderInlineError,
  renderStatePanelHtml,
} from "./panels.js";
import type { ContrastPanelModel } from "./panels.js";
import {
  EXPLANATION_TYPES,
  FOCUSED_TYPES,
  initialViewState,
} from "./types.js";
import type {
  ActionLabel,
  ConfigDoc,
  ExplanationTypeName,
  FactorsDoc,
  MapDoc,
  PolicyDoc,
  ViewState,
} from "./types.js";

const SELECT_HINT = "Click a grid cell to inspect its factors.";
const FOCUS_HINT = "Select a state on the grid first.";

export interface AppOptions {
  debounceMs?: number;
}

export class ExplorerApp {
  readonly view: ViewState = initialViewState();
  private map: MapDoc | null = null;
  private policy: PolicyDoc | null = null;
  private critical = new Set<number>();
  private committedAlpha = 0;
  private currentFactors: FactorsDoc | null = null;
  private contrastModel: ContrastPanelModel | null = null;
  private activeTab: ExplanationTypeName = "contrastive";
  private readonly gate: MutationGate;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ServiceApi,
    options: AppOptions = {},
  ) {
    this.gate = new MutationGate(
      (alpha) => this.commitAlpha(alpha),
      options.debounceMs ?? 150,
    );
    root.addEventListener("click", (event) => this.onClick(event));
    root.addEventListener("input", (event) => this.onInput(event));
  }

  async init(): Promise<void> {
    try {
      const [map, policy] = await Promise.all([
        this.api.map(),
        this.api.policy(),
      ]);
      this.map = map;
      this.policy = policy;
      this.noteRevision(map.revision);
      // The API reports the critical set only from the config mutation,
      // so the initial read is a PUT of the slider's starting value.
      this.applyConfig(await this.api.setAlpha(this.view.alphaSlider));
    } catch (error) {
      this.handleError(error, "explanation-slot");
      return;
    }
    this.renderAll();
  }

  private slot(id: string): HTMLElement | null {
    return this.root.querySelector(`#${id}`);
  }

  private setSlot(id: string, html: string): void {
    const element = this.slot(id);
    if (element !== null) element.innerHTML = html;
  }

  private noteRevision(revision: number): void {
    if (revision > this.view.lastRevision) this.view.lastRevision = revision;
    const chip = this.slot("revision-chip");
    if (chip !== null) chip.textContent = `revision ${this.view.lastRevision}`;
  }

  private showBanner(visible: boolean): void {
    const banner = this.slot("banner");
    if (banner === null) return;
    banner.hidden = !visible;
    if (visible) {
      banner.textContent =
        `service unreachable; showing revision ${this.view.lastRevision}`;
    }
  }

  private handleError(error: unknown, slotId: string): void {
    if (error instanceof ConnectionError) {
      this.showBanner(true);
      return;
    }
    if (error instanceof ApiError) {
      this.setSlot(slotId, renderInlineError(error.detail));
      return;
    }
    throw error;
  }

  private footprints(): FootprintSets | undefined {
    if (this.contrastModel === null) return undefined;
    return {
      chosen: new Set(this.contrastModel.footprints.chosen),
      alternative: new Set(this.contrastModel.footprints.alternative),
    };
  }

  renderAll(): void {
    if (this.map === null || this.policy === null) return;
    const model = buildGridViewModel(
      this.map,
      this.policy,
      this.critical,
      this.view,
      this.footprints(),
    );
    this.setSlot("grid-slot", renderGridHtml(model));
    this.setSlot(
      "state-slot",
      this.currentFactors === null
        ? `<p class="hint">${SELECT_HINT}</p>`
        : renderStatePanelHtml(buildStatePanel(this.currentFactors)),
    );
    this.setSlot(
      "contrast-slot",
      this.contrastModel === null ? "" : renderContrastHtml(this.contrastModel),
    );
    this.renderTabs();
  }

  private renderTabs(): void {
    const tabs = EXPLANATION_TYPES.map((name) => {
      const active = name === this.activeTab ? " active" : "";
      return `<button class="tab${active}" data-tab="${name}">${name}</button>`;
    }).join("");
    this.setSlot("tabs", tabs);
  }

  private onClick(event: Event): void {
    const target = event.target as HTMLElement | null;
    if (target === null) return;
    const cell = target.closest<HTMLElement>(".cell");
    if (cell !== null && cell.dataset.state !== undefined) {
      void this.selectState(Number(cell.dataset.state));
      return;
    }
    const alt = target.closest<HTMLElement>(".alt-btn");
    if (alt !== null && alt.dataset.alt !== undefined) {
      void this.selectAlternative(alt.dataset.alt as ActionLabel);
      return;
    }
    const tab = target.closest<HTMLElement>(".tab");
    if (tab !== null && tab.dataset.tab !== undefined) {
      void this.showExplanation(tab.dataset.tab as ExplanationTypeName);
    }
  }

  private onInput(event: Event): void {
    const target = event.target as HTMLInputElement | null;
    if (target === null || target.id !== "alpha-range") return;
    const alpha = Number(target.value);
    this.view.alphaSlider = alpha;
    const label = this.slot("alpha-value");
    if (label !== null) label.textContent = formatAlpha(alpha);
    this.gate.request(alpha);
  }

  async selectState(id: number): Promise<void> {
    const letter = this.map?.cells[id];
    if (letter === undefined || letter === "B") return;
    this.view.selectedState = id;
    this.view.selectedAlternative = null;
    this.contrastModel = null;
    try {
      const factors = await this.api.factors(id);
      this.currentFactors = factors;
      this.noteRevision(factors.revision);
      this.showBanner(false);
    } catch (error) {
      this.handleError(error, "state-slot");
      if (error instanceof ApiError) this.currentFactors = null;
      return;
    }
    this.renderAll();
  }

  async selectAlternative(label: ActionLabel): Promise<void> {
    const factors = this.currentFactors;
    if (factors === null || !factors.enabled.includes(label)) return;
    if (factors.chosen === null || factors.chosen === label) return;
    this.view.selectedAlternative = label;
    try {
      const [fresh, contrast] = await Promise.all([
        this.api.factors(factors.state),
        this.api.contrast(factors.state, factors.chosen, label),
      ]);
      this.currentFactors = fresh;
      this.contrastModel = buildContrastModel(fresh, contrast);
      this.noteRevision(contrast.revision);
      this.showBanner(false);
    } catch (error) {
      this.handleError(error, "contrast-slot");
      return;
    }
    this.renderAll();
  }

  async showExplanation(type: ExplanationTypeName): Promise<void> {
    this.activeTab = type;
    this.renderTabs();
    if (FOCUSED_TYPES.has(type) && this.view.selectedState === null) {
      this.setSlot("explanation-slot", renderInlineError(FOCUS_HINT));
      return;
    }
    try {
      const doc = await this.api.explain(
        type,
        FOCUSED_TYPES.has(type) ? (this.view.selectedState ?? undefined) : undefined,
      );
      this.noteRevision(doc.revision);
      this.setSlot("explanation-slot", renderExplanationHtml(doc));
      this.showBanner(false);
    } catch (error) {
      this.handleError(error, "explanation-slot");
    }
  }

  /** Runs inside the mutation gate; at most one of these is in flight. */
  private async commitAlpha(alpha: number): Promise<void> {
    try {
      this.applyConfig(await this.api.setAlpha(alpha));
      this.showBanner(false);
      await this.refreshSelection();
    } catch (error) {
      this.snapBack();
      if (error instanceof ApiError) {
        this.setSlot("alpha-error", error.detail);
        return;
      }
      this.handleError(error, "state-slot");
    }
    this.renderAll();
  }

  private applyConfig(doc: ConfigDoc): void {
    this.committedAlpha = doc.alpha;
    this.critical = new Set(doc.critical);
    this.noteRevision(doc.revision);
    this.setSlot("alpha-error", "");
  }

  private snapBack(): void {
    this.view.alphaSlider = this.committedAlpha;
    const range = this.slot("alpha-range") as HTMLInputElement | null;
    if (range !== null) range.value = String(this.committedAlpha);
    const label = this.slot("alpha-value");
    if (label !== null) label.textContent = formatAlpha(this.committedAlpha);
  }

  /** Criticality may have shifted under the new threshold, so the open
   * panels are refetched rather than trusted.
   */
  private async refreshSelection(): Promise<void> {
    const selected = this.view.selectedState;
    if (selected === null) return;
    const factors = await this.api.factors(selected);
    this.currentFactors = factors;
    this.noteRevision(factors.revision);
    const alternative = this.view.selectedAlternative;
    if (
      alternative === null ||
      !factors.critical ||
      factors.chosen === null ||
      !factors.enabled.includes(alternative)
    ) {
      this.view.selectedAlternative = null;
      this.contrastModel = null;
      return;
    }
    const contrast = await this.api.contrast(
      factors.state,
      factors.chosen,
      alternative,
    );
    this.contrastModel = buildContrastModel(factors, contrast);
    this.noteRevision(contrast.revision);
  }
}
