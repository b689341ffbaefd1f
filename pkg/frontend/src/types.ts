/** Wire types for the route service plus the explorer's own view state. */

export type ActionLabel = "north" | "east" | "south" | "west";

/** Service encodes infinities as this literal. */
export type Quantity = number | "unreachable";

export type CellLetter = "U" | "B" | "S" | "D" | "X" | "H";

export interface HealthDoc {
  status: string;
  revision: number | null;
}

export interface MapDoc {
  width: number;
  height: number;
  p_success: number;
  start: number;
  destination: number;
  cells: CellLetter[];
  masks: Record<string, ActionLabel[]>;
  revision: number;
}

export interface RouteStep {
  state: number;
  action: ActionLabel;
}

export interface PolicyDoc {
  choices: Record<string, ActionLabel | null>;
  route: { steps: RouteStep[]; terminal: number } | null;
  revision: number;
}

export interface FactorsDoc {
  state: number;
  value: Quantity;
  critical: boolean;
  chosen: ActionLabel | null;
  enabled: ActionLabel[];
  impact: Partial<Record<ActionLabel, Quantity>>;
  responsibility: Partial<Record<ActionLabel, Quantity>>;
  constrictiveness?: Partial<Record<ActionLabel, number>>;
  tree_states?: Partial<Record<ActionLabel, number[]>>;
  revision: number;
}

export interface JustificationDoc {
  shortest: boolean;
  most_flexible: boolean;
}

export interface SentenceDoc {
  text: string;
  state: number | null;
  action: ActionLabel | string | null;
  connective: string;
  justification: JustificationDoc | null;
}

export interface ExplanationDocWire {
  type: string;
  text: string;
  sentences: SentenceDoc[];
  missing_justification: boolean;
  revision: number;
}

export interface ContrastDoc {
  state: number;
  chosen: string;
  alt: string;
  sentence: string;
  revision: number;
}

export interface ConfigDoc {
  alpha: number;
  critical: number[];
  revision: number;
}

export const EXPLANATION_TYPES = [
  "none",
  "naive-one",
  "responsibility",
  "constrictive",
  "naive-path",
  "selective",
  "contrastive",
] as const;

export type ExplanationTypeName = (typeof EXPLANATION_TYPES)[number];

/** Types whose request must name a focus state. */
export const FOCUSED_TYPES: ReadonlySet<ExplanationTypeName> = new Set([
  "naive-one",
  "responsibility",
  "constrictive",
]);

export interface ViewState {
  selectedState: number | null;
  /** Must be one of the selected state's enabled actions when set. */
  selectedAlternative: ActionLabel | null;
  alphaSlider: number;
  lastRevision: number;
}

export function initialViewState(): ViewState {
  return {
    selectedState: null,
    selectedAlternative: null,
    alphaSlider: 0,
    lastRevision: 0,
  };
}
