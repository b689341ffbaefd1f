/** Canned service documents shaped exactly like live responses. */
import type {
  ActionLabel,
  FactorsDoc,
  MapDoc,
  PolicyDoc,
} from "../src/types.js";

export function referenceMapDoc(): MapDoc {
  return {
    width: 5,
    height: 5,
    p_success: 0.9,
    start: 5,
    destination: 4,
    cells: [
      "U", "U", "X", "U", "D",
      "S", "U", "U", "U", "U",
      "U", "U", "U", "X", "U",
      "H", "U", "U", "U", "H",
      "H", "H", "H", "H", "H",
    ],
    masks: {
      "0": ["south"], "1": ["west"], "2": [], "3": ["east"], "4": [],
      "5": ["east", "south"], "6": ["north"], "7": ["east", "north"],
      "8": ["north"], "9": ["north"], "10": ["east", "south"],
      "11": ["east"], "12": ["east", "north"], "13": [],
      "14": ["north", "west"], "15": ["south"], "16": ["north"],
      "17": ["north"], "18": ["east"], "19": ["north"], "20": ["east"],
      "21": ["east"], "22": ["east"], "23": ["east"], "24": ["north"],
    },
    revision: 1,
  };
}

export function referencePolicyDoc(): PolicyDoc {
  const choices: Record<string, ActionLabel | null> = {
    "0": "south", "1": "west", "2": null, "3": "east", "4": null,
    "5": "south", "6": "north", "7": "east", "8": "north", "9": "north",
    "10": "east", "11": "east", "12": "north", "13": null, "14": "north",
    "15": "south", "16": "north", "17": "north", "18": "east",
    "19": "north", "20": "east", "21": "east", "22": "east",
    "23": "east", "24": "north",
  };
  return {
    choices,
    route: {
      steps: [
        { state: 5, action: "south" },
        { state: 10, action: "east" },
        { state: 11, action: "east" },
        { state: 12, action: "north" },
        { state: 7, action: "east" },
        { state: 8, action: "north" },
        { state: 3, action: "east" },
      ],
      terminal: 4,
    },
    revision: 1,
  };
}

export const REFERENCE_CRITICAL = [5, 7, 10, 12, 14];

export function forkFactorsDoc(): FactorsDoc {
  return {
    state: 10,
    value: 6.666666666665241,
    critical: true,
    chosen: "east",
    enabled: ["east", "south"],
    impact: { east: 5.666666666666482, south: 9.666666656703097 },
    responsibility: { east: 0.0, south: 3.9999999900366143 },
    constrictiveness: { east: 4, south: 2 },
    tree_states: {
      east: [2, 3, 4, 7, 8, 11, 12, 13],
      south: [4, 9, 13, 14, 15, 19, 20, 21, 22, 23, 24],
    },
    revision: 1,
  };
}

export function deadEndNeighborFactorsDoc(): FactorsDoc {
  return {
    state: 12,
    value: 4.444444444444445,
    critical: true,
    chosen: "north",
    enabled: ["north", "east"],
    impact: { north: 3.444444444444444, east: "unreachable" },
    responsibility: { north: 0.0, east: "unreachable" },
    constrictiveness: { north: 2, east: 0 },
    tree_states: { north: [7, 2, 8, 3, 4], east: [13] },
    revision: 1,
  };
}

export function deadEndFactorsDoc(): FactorsDoc {
  return {
    state: 13,
    value: "unreachable",
    critical: false,
    chosen: null,
    enabled: [],
    impact: {},
    responsibility: {},
    revision: 1,
  };
}
