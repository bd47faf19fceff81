// DOM wiring: renders the BoardController state and forwards events.

import { AssistantClient, StrategyInfo } from "./api.js";
import { BoardController, BoardState, TileColor, digitsToColors } from "./board.js";

const client = new AssistantClient("");
const board = new BoardController(client);

const app = document.querySelector("#app") as HTMLElement;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

// --- static skeleton -------------------------------------------------------

const header = el("header");
header.append(el("h1", "", "wordlab assistant"));
const picker = el("select") as HTMLSelectElement;
picker.id = "strategy-picker";
const startButton = el("button", "primary", "New game");
startButton.onclick = () => {
  const id = startButton.dataset.sessionId;
  if (id) void client.deleteSession(id).catch(() => undefined);
  void board.start(picker.value);
};
header.append(picker, startButton);

const banner = el("div", "banner");
banner.hidden = true;

const statusLine = el("p", "status");
const rowsBox = el("div", "rows");
const inputBox = el("div", "input-row");
const lettersInput = el("input") as HTMLInputElement;
lettersInput.id = "letters";
lettersInput.maxLength = 5;
lettersInput.placeholder = "word you played";
lettersInput.oninput = () => board.setDraftLetters(lettersInput.value);
const submitButton = el("button", "primary", "Submit row");
submitButton.onclick = () => void board.submitRow();
const undoButton = el("button", "", "Undo last row");
undoButton.onclick = () => void board.undo();
const whatIfButton = el("button", "", "What if?");
whatIfButton.onclick = () => void board.whatIf();
inputBox.append(lettersInput, submitButton, whatIfButton, undoButton);

const suggestionBox = el("p", "suggestion");
const candidatesBox = el("div", "candidates");
const previewBox = el("div", "preview");

app.append(
  header,
  banner,
  statusLine,
  rowsBox,
  inputBox,
  suggestionBox,
  candidatesBox,
  previewBox,
);

// --- rendering --------------------------------------------------------------

function tile(letter: string, color: TileColor, onClick?: () => void): HTMLElement {
  const node = el("span", `tile ${color}`, letter || " ");
  if (onClick) {
    node.classList.add("editable");
    node.onclick = onClick;
  }
  return node;
}

function renderRows(state: BoardState): void {
  rowsBox.replaceChildren();
  const session = state.session;
  if (!session) return;
  for (const row of session.history) {
    const rowNode = el("div", "row frozen");
    const colors = digitsToColors(row.response);
    row.guess.split("").forEach((letter, i) => {
      rowNode.append(tile(letter, colors[i]));
    });
    rowsBox.append(rowNode);
  }
  if (state.phase === "playing" || state.phase === "contradiction") {
    const draftNode = el("div", "row draft");
    for (let i = 0; i < board.wordLength; i += 1) {
      const letter = state.draft.letters[i] ?? "";
      draftNode.append(tile(letter, state.draft.colors[i], () => board.cycleTile(i)));
    }
    rowsBox.append(draftNode);
  }
}

function renderStatus(state: BoardState): void {
  const session = state.session;
  banner.hidden = state.message === null;
  banner.textContent = state.message ?? "";
  banner.classList.toggle("error", state.phase === "contradiction" || state.phase === "offline");
  if (!session) {
    statusLine.textContent =
      state.phase === "starting" ? "starting…" : "pick a strategy and start a game";
    suggestionBox.textContent = "";
    return;
  }
  startButton.dataset.sessionId = session.id;
  statusLine.textContent = `${session.candidate_count} candidate${
    session.candidate_count === 1 ? "" : "s"
  } remain · strategy ${session.strategy}`;
  if (state.phase === "solved") {
    suggestionBox.textContent = `solved: ${session.suggestion} 🎉`;
  } else if (state.phase === "contradiction") {
    suggestionBox.textContent = "no suggestion — the last row contradicts the rest";
  } else {
    suggestionBox.textContent = `suggested next guess: ${session.suggestion}`;
  }
}

function renderCandidates(state: BoardState): void {
  candidatesBox.replaceChildren();
  if (!state.candidates || state.phase === "solved") return;
  candidatesBox.append(el("h2", "", "top candidates"));
  const list = el("ul");
  for (const entry of state.candidates.candidates) {
    const text =
      entry.score === null ? entry.word : `${entry.word} (${entry.score.toFixed(3)})`;
    list.append(el("li", "", text));
  }
  candidatesBox.append(list);
}

function renderPreview(state: BoardState): void {
  previewBox.replaceChildren();
  const preview = state.preview;
  if (!preview) return;
  previewBox.append(
    el(
      "h2",
      "",
      `what if “${preview.guess}”: ${preview.group_count} groups, entropy ${preview.entropy.toFixed(2)}`,
    ),
  );
  const list = el("ul");
  for (const group of preview.groups.slice(0, 12)) {
    list.append(el("li", "", `${group.key}: ${group.size}`));
  }
  previewBox.append(list);
  const close = el("button", "", "close");
  close.onclick = () => board.clearPreview();
  previewBox.append(close);
}

board.subscribe(() => {
  const state = board.getState();
  renderRows(state);
  renderStatus(state);
  renderCandidates(state);
  renderPreview(state);
  submitButton.disabled = state.phase !== "playing" && state.phase !== "contradiction";
  whatIfButton.disabled = state.phase !== "playing";
  undoButton.hidden = state.phase !== "contradiction";
  if (state.session && state.phase !== "solved") {
    window.location.hash = state.session.id;
  }
});

// --- boot -------------------------------------------------------------------

async function boot(): Promise<void> {
  try {
    const { strategies } = await client.strategies();
    picker.replaceChildren(
      ...strategies.map((s: StrategyInfo) => {
        const option = el("option", "", s.name) as HTMLOptionElement;
        option.value = s.name;
        option.title = s.label;
        return option;
      }),
    );
    picker.value = "search-kld";
  } catch {
    banner.hidden = false;
    banner.classList.add("error");
    banner.textContent = "assistant service unreachable — start it with `wordlab serve`";
    const retry = el("button", "", "retry");
    retry.onclick = () => {
      banner.replaceChildren();
      void boot();
    };
    banner.append(" ", retry);
    return;
  }
  const restored = window.location.hash.slice(1);
  if (restored) {
    await board.restore(restored);
  }
}

void boot();
