import { LABEL_BY_SCORE, RATING_STEPS, type SessionStore } from './state';
import type {
  MainCategory,
  RatingScore,
  RubricDocument,
  RubricQuestion,
} from './types';

export const GROUP_ORDER: readonly MainCategory[] = ['Real', 'Win', 'Worth'];

export function groupQuestions(
  rubric: RubricDocument,
): Map<MainCategory, RubricQuestion[]> {
  const groups = new Map<MainCategory, RubricQuestion[]>();
  for (const name of GROUP_ORDER) groups.set(name, []);
  for (const question of rubric.questions) {
    groups.get(question.main_category)?.push(question);
  }
  return groups;
}

function criteriaList(question: RubricQuestion): HTMLElement {
  const dl = document.createElement('dl');
  dl.className = 'criteria';
  const rows: Array<[string, string]> = [
    ['Full', question.criteria.full],
    ['Partial', question.criteria.partial],
    ['None', question.criteria.none],
  ];
  for (const [label, text] of rows) {
    const dt = document.createElement('dt');
    dt.textContent = label;
    const dd = document.createElement('dd');
    dd.textContent = text;
    dl.appendChild(dt);
    dl.appendChild(dd);
  }
  return dl;
}

function ratingButtons(store: SessionStore, qid: string): HTMLElement {
  const wrap = document.createElement('div');
  wrap.className = 'rating-buttons';
  for (const score of RATING_STEPS) {
    const button = document.createElement('button');
    button.type = 'button';
    button.className = 'rating-button';
    button.dataset.score = String(score);
    button.textContent = LABEL_BY_SCORE[score];
    button.addEventListener('click', () => {
      void store.setRating(qid, score);
    });
    wrap.appendChild(button);
  }
  return wrap;
}

/**
 * The 26-question questionnaire, grouped Real / Win / Worth, with the
 * rating criteria shown inline so the user can apply them directly.
 * Finishing is blocked until every question has an explicit answer.
 */
export function renderWizard(
  root: HTMLElement,
  store: SessionStore,
  rubric: RubricDocument,
): void {
  const container = document.createElement('section');
  container.className = 'wizard';

  const progress = document.createElement('p');
  progress.className = 'wizard-progress';

  const finish = document.createElement('button');
  finish.type = 'button';
  finish.className = 'wizard-finish';
  finish.textContent = 'Finish and review what-ifs';
  finish.addEventListener('click', () => {
    store.finish();
  });

  const header = document.createElement('header');
  header.appendChild(progress);
  header.appendChild(finish);
  container.appendChild(header);

  for (const [name, questions] of groupQuestions(rubric)) {
    const section = document.createElement('section');
    section.className = 'question-group';
    section.dataset.group = name;
    const title = document.createElement('h3');
    title.textContent = `${name} (${questions.length} questions)`;
    section.appendChild(title);

    for (const question of questions) {
      const article = document.createElement('article');
      article.className = 'question';
      article.dataset.questionId = question.id;

      const heading = document.createElement('h4');
      heading.textContent = `${question.id} · ${question.short_name}`;
      const text = document.createElement('p');
      text.className = 'question-text';
      text.textContent = question.text;
      const sub = document.createElement('p');
      sub.className = 'question-subcategory';
      sub.textContent = question.subcategory;

      article.appendChild(heading);
      article.appendChild(sub);
      article.appendChild(text);
      article.appendChild(criteriaList(question));
      article.appendChild(ratingButtons(store, question.id));
      section.appendChild(article);
    }
    container.appendChild(section);
  }

  root.appendChild(container);

  function sync(): void {
    const state = store.get();
    progress.textContent = `answered ${store.answeredCount()} / ${store.questionIds.length}`;
    finish.disabled = !store.isComplete() || state.finished;

    for (const article of container.querySelectorAll<HTMLElement>('.question')) {
      const qid = article.dataset.questionId ?? '';
      const answered = state.answered[qid] ?? false;
      article.classList.toggle('unanswered', !answered);
      for (const button of article.querySelectorAll<HTMLButtonElement>(
        '.rating-button',
      )) {
        const selected =
          answered && Number(button.dataset.score) === state.ratings[qid];
        button.classList.toggle('selected', selected);
      }
    }
  }

  sync();
  store.subscribe(sync);
}

export function scoreFromButton(button: HTMLButtonElement): RatingScore {
  return Number(button.dataset.score) as RatingScore;
}
