// Board state machine: everything the page renders, kept apart from the
// DOM so tests can drive a whole session without a browser.

import {
  ApiError,
  AssistantClient,
  CandidateList,
  Preview,
  SessionSnapshot,
} from "./api.js";

export type TileColor = "gray" | "yellow" | "green";

const COLOR_TO_DIGIT: Record<TileColor, string> = {
  gray: "0",
  green: "1",
  yellow: "2",
};

const DIGIT_TO_COLOR: Record<string, TileColor> = {
  "0": "gray",
  "1": "green",
  "2": "yellow",
};

export function colorsToDigits(colors: TileColor[]): string {
  return colors.map((color) => COLOR_TO_DIGIT[color]).join("");
}

export function digitsToColors(digits: string): TileColor[] {
  return Array.from(digits, (digit) => {
    const color = DIGIT_TO_COLOR[digit];
    if (color === undefined) {
      throw new Error(`not a response digit: ${digit}`);
    }
    return color;
  });
}

/** Click cycle on a tile: gray → yellow → green → gray. */
export function cycleColor(color: TileColor): TileColor {
  switch (color) {
    case "gray":
      return "yellow";
    case "yellow":
      return "green";
    case "green":
      return "gray";
  }
}

/**
 * Why a submitted row could never happen in a real game, or null when
 * it is fine.  The one non-obvious case: all letters placed but one,
 * with that one marked present-elsewhere — there is no "elsewhere"
 * left, so the game can never answer with length-1 greens plus a yellow.
 */
export function rowError(
  letters: string,
  colors: TileColor[],
  wordLength: number,
): string | null {
  if (letters.length !== wordLength) {
    return `enter ${wordLength} letters`;
  }
  if (!/^[a-z]+$/.test(letters)) {
    return "letters a-z only";
  }
  if (colors.length !== wordLength) {
    return "assign a color to every tile";
  }
  const greens = colors.filter((c) => c === "green").length;
  const yellows = colors.filter((c) => c === "yellow").length;
  if (greens === wordLength - 1 && yellows === 1) {
    return "impossible feedback: with every other letter placed, the last one has nowhere else to go";
  }
  return null;
}

export type Phase =
  | "idle"
  | "starting"
  | "playing"
  | "solved"
  | "contradiction"
  | "offline";

export interface RowDraft {
  letters: string;
  colors: TileColor[];
}

export interface BoardState {
  phase: Phase;
  session: SessionSnapshot | null;
  draft: RowDraft;
  message: string | null;
  candidates: CandidateList | null;
  preview: Preview | null;
}

function freshDraft(wordLength: number): RowDraft {
  return { letters: "", colors: Array(wordLength).fill("gray") };
}

export class BoardController {
  private state: BoardState;
  private listeners: Array<() => void> = [];

  constructor(
    private readonly client: AssistantClient,
    readonly wordLength = 5,
    private readonly candidateLimit = 8,
  ) {
    this.state = {
      phase: "idle",
      session: null,
      draft: freshDraft(wordLength),
      message: null,
      candidates: null,
      preview: null,
    };
  }

  getState(): BoardState {
    return this.state;
  }

  subscribe(listener: () => void): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) {
      listener();
    }
  }

  private fail(error: unknown): void {
    if (error instanceof ApiError) {
      this.state.message = error.message;
    } else {
      // fetch itself rejected: the service is not reachable
      this.state.phase = "offline";
      this.state.message = "assistant service unreachable — is `wordlab serve` running?";
    }
    this.emit();
  }

  private async adopt(session: SessionSnapshot): Promise<void> {
    this.state.session = session;
    this.state.candidates = await this.client.candidates(
      session.id,
      this.candidateLimit,
    );
    this.state.phase = session.solved ? "solved" : "playing";
    this.state.draft = freshDraft(this.wordLength);
    this.state.preview = null;
    this.state.message = null;
    this.emit();
  }

  async start(strategy: string, seed?: number): Promise<void> {
    this.state.phase = "starting";
    this.state.message = null;
    this.emit();
    try {
      await this.adopt(await this.client.createSession(strategy, seed));
    } catch (error) {
      this.fail(error);
    }
  }

  /** Rebuild the whole board from the service, e.g. after a page reload. */
  async restore(sessionId: string): Promise<void> {
    try {
      await this.adopt(await this.client.getSession(sessionId));
    } catch (error) {
      this.fail(error);
    }
  }

  setDraftLetters(text: string): void {
    this.state.draft.letters = text.toLowerCase().slice(0, this.wordLength);
    this.state.message = null;
    this.emit();
  }

  cycleTile(index: number): void {
    const colors = this.state.draft.colors;
    if (index >= 0 && index < colors.length) {
      colors[index] = cycleColor(colors[index]);
      this.emit();
    }
  }

  async submitRow(): Promise<void> {
    const { session, draft, phase } = this.state;
    if (session === null || (phase !== "playing" && phase !== "contradiction")) {
      return;
    }
    const problem = rowError(draft.letters, draft.colors, this.wordLength);
    if (problem !== null) {
      this.state.message = problem;
      this.emit();
      return;
    }
    try {
      await this.adopt(
        await this.client.submitFeedback(
          session.id,
          draft.letters,
          colorsToDigits(draft.colors),
        ),
      );
    } catch (error) {
      if (error instanceof ApiError && error.code === "contradictory_feedback") {
        this.state.phase = "contradiction";
        this.state.message =
          error.message + " — undo the mistaken row, then fix the colors";
        this.emit();
        return;
      }
      this.fail(error);
    }
  }

  /** Undo the last submitted row (the recovery path after a contradiction). */
  async undo(): Promise<void> {
    const session = this.state.session;
    if (session === null || session.history.length === 0) {
      return;
    }
    try {
      await this.adopt(await this.client.rollback(session.id));
    } catch (error) {
      this.fail(error);
    }
  }

  /** Ask how the drafted word would split the surviving candidates. */
  async whatIf(): Promise<void> {
    const session = this.state.session;
    if (session === null) {
      return;
    }
    if (this.state.phase === "solved") {
      this.state.message = "already solved — nothing left to explore";
      this.emit();
      return;
    }
    const letters = this.state.draft.letters;
    if (letters.length !== this.wordLength || !/^[a-z]+$/.test(letters)) {
      this.state.message = `enter ${this.wordLength} letters to preview`;
      this.emit();
      return;
    }
    try {
      this.state.preview = await this.client.preview(session.id, letters);
      this.state.message = null;
      this.emit();
    } catch (error) {
      this.fail(error);
    }
  }

  clearPreview(): void {
    this.state.preview = null;
    this.emit();
  }
}
